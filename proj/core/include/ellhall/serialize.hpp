#pragma once

// Documents for coefficients, paths, elements, tables and configs, and the
// on-disk result cache.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ellhall/canonical_basis.hpp"

namespace ellhall {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Format { JSON, TEXT, TEX };
Format parse_format(const std::string& s);

/// Sorted records {s_half, sbar_half, num, den}.
std::string coefficient_to_json(const Coefficient& c);
Coefficient coefficient_from_json(const std::string& doc);

/// "r,d" ; paths as "r,d;r,d;..." (whitespace also separates segments)
ClassZ parse_class(const std::string& s);
ConvexPath parse_path(const std::string& s);

std::string render_paths(const std::vector<ConvexPath>& paths, const ClassZ& weight, const Slope& floor, Format f);
std::string render_element(const AlgebraElement& e, Format f);
AlgebraElement element_from_json(const std::string& doc);
std::string render_kostka(const KostkaTable& t, Format f);
std::string render_sl2(const Sl2Report& r, Format f);
std::string render_selftest(const std::vector<SelfTestResult>& results, const std::string& config_hash, Format f);

std::string config_to_json(const RelationConfig& cfg);
RelationConfig config_from_json(const std::string& doc);
/// "default" or a path to a config document.
RelationConfig load_config(const std::string& source);

/// Results keyed by a digest of the job description; writes go through a
/// temporary file and a rename.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);
  [[nodiscard]] std::optional<std::string> get(const std::string& key) const;
  void put(const std::string& key, const std::string& content) const;
  [[nodiscard]] std::filesystem::path file_for(const std::string& key) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace ellhall
