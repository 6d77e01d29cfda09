#pragma once

#include <crformal/cr_map.hpp>
#include <crformal/document.hpp>
#include <crformal/hypersurface.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crformal {

/// Settings after applying document statements and then overrides.
struct Settings {
  int degree = 10;
  Convention convention = Convention::TwoI;
  std::uint64_t seed = 0;
  std::size_t dimension = 1;
};

struct Overrides {
  std::optional<int> degree;
  std::optional<Convention> convention;
  std::optional<std::uint64_t> seed;
};

/// Evaluates the declarations of a document on demand.
class Workspace {
 public:
  Workspace(const Document& doc, const Overrides& overrides);

  const Settings& settings() const { return settings_; }

  enum class Kind { Series, Hypersurface, Map };
  Kind kind_of(const std::string& name) const;

  /// A hypersurface declaration, or a plain expression read as Q(z, chi, tau).
  NormalHypersurface hypersurface(const std::string& name) const;
  CRMap map(const std::string& name) const;

  /// Evaluate an expression over the given coordinate names.
  Series evaluate(const Expr& e, const std::vector<std::string>& coordinates) const;

 private:
  Series eval(const Expr& e, const std::vector<std::string>& coordinates, int depth) const;
  const Expr& declaration(const std::string& name) const;

  Settings settings_;
  std::map<std::string, Expr> declarations_;
};

/// Names of the hypersurface coordinates (z.., chi.., tau) and of the map
/// coordinates (z.., w) and the prolongation coordinates (z.., chi..).
std::vector<std::string> map_coordinates(std::size_t n);
std::vector<std::string> prolong_coordinates(std::size_t n);

}  // namespace crformal
