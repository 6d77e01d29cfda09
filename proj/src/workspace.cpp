#include <crformal/families.hpp>
#include <crformal/workspace.hpp>

#include <set>

namespace crformal {

namespace {

const std::set<std::string> kHypersurfaceCalls = {"hypersurface", "graph", "heisenberg", "m_psi", "blowup",
                                                   "exp_model"};
const std::set<std::string> kMapCalls = {"map", "blowup_map", "blowup_map_unscaled", "tk", "hk", "identity"};

[[noreturn]] void fail_at(const Expr& e, ErrorCode code, const std::string& msg) {
  throw ParseError(code, e.line, e.column, msg);
}

unsigned small_int(const Expr& e, const char* what) {
  if (e.kind != Expr::Kind::Number || e.number.get_den() != 1 || e.number > 1000) {
    fail_at(e, ErrorCode::InvalidArgument, std::string(what) + " must be a small non-negative integer");
  }
  return static_cast<unsigned>(e.number.get_num().get_ui());
}

const Expr& keyword(const Expr& call, const std::string& name) {
  for (const auto& a : call.args) {
    if (a.kind == Expr::Kind::Keyword && a.name == name) return a.args[0];
  }
  fail_at(call, ErrorCode::InvalidArgument, call.name + " needs " + name + " = ...");
}

std::vector<const Expr*> components(const Expr& e) {
  std::vector<const Expr*> out;
  if (e.kind == Expr::Kind::Tuple) {
    for (const auto& a : e.args) out.push_back(&a);
  } else {
    out.push_back(&e);
  }
  return out;
}

void expect_args(const Expr& call, std::size_t count) {
  if (call.args.size() != count) {
    fail_at(call, ErrorCode::InvalidArgument,
            call.name + " takes " + std::to_string(count) + " argument" + (count == 1 ? "" : "s"));
  }
}

}  // namespace

std::vector<std::string> map_coordinates(std::size_t n) { return CRMap::variable_names(n); }

std::vector<std::string> prolong_coordinates(std::size_t n) {
  if (n == 1) return {"z", "chi"};
  std::vector<std::string> names;
  for (std::size_t j = 1; j <= n; ++j) names.push_back("z" + std::to_string(j));
  for (std::size_t j = 1; j <= n; ++j) names.push_back("chi" + std::to_string(j));
  return names;
}

Workspace::Workspace(const Document& doc, const Overrides& overrides) {
  for (const Statement& s : doc.statements) {
    switch (s.kind) {
      case Statement::Kind::Degree: settings_.degree = static_cast<int>(s.number); break;
      case Statement::Kind::Seed: settings_.seed = s.number; break;
      case Statement::Kind::Dimension: settings_.dimension = s.number; break;
      case Statement::Kind::Convention: settings_.convention = s.convention; break;
      case Statement::Kind::Declare: declarations_[s.name] = s.value; break;
      default: break;
    }
  }
  if (overrides.degree) settings_.degree = *overrides.degree;
  if (overrides.convention) settings_.convention = *overrides.convention;
  if (overrides.seed) settings_.seed = *overrides.seed;
}

const Expr& Workspace::declaration(const std::string& name) const {
  auto it = declarations_.find(name);
  if (it == declarations_.end()) throw Error(ErrorCode::UndeclaredName, "undeclared name '" + name + "'");
  return it->second;
}

Workspace::Kind Workspace::kind_of(const std::string& name) const {
  const Expr& e = declaration(name);
  if (e.kind == Expr::Kind::Call && kHypersurfaceCalls.count(e.name)) return Kind::Hypersurface;
  if (e.kind == Expr::Kind::Call && kMapCalls.count(e.name)) return Kind::Map;
  return Kind::Series;
}

Series Workspace::evaluate(const Expr& e, const std::vector<std::string>& coordinates) const {
  return eval(e, coordinates, 0);
}

Series Workspace::eval(const Expr& e, const std::vector<std::string>& coords, int depth) const {
  const std::size_t arity = coords.size();
  switch (e.kind) {
    case Expr::Kind::Number:
      return Series::polynomial_constant(arity, Scalar(e.number, mpq_class(0)));
    case Expr::Kind::ImaginaryUnit:
      return Series::polynomial_constant(arity, Scalar::i());
    case Expr::Kind::Variable: {
      for (std::size_t k = 0; k < arity; ++k) {
        if (coords[k] == e.name) return Series::polynomial_variable(arity, k);
      }
      auto it = declarations_.find(e.name);
      if (it == declarations_.end()) {
        std::string list;
        for (const auto& c : coords) list += (list.empty() ? "" : ", ") + c;
        fail_at(e, ErrorCode::UndeclaredName, "'" + e.name + "' is not a coordinate here (coordinates: " + list + ")");
      }
      if (kind_of(e.name) != Kind::Series) {
        fail_at(e, ErrorCode::InvalidArgument, "'" + e.name + "' is not a plain expression");
      }
      if (depth > 64) fail_at(e, ErrorCode::InvalidArgument, "expression nesting too deep");
      return eval(it->second, coords, depth + 1);
    }
    case Expr::Kind::Add: return eval(e.args[0], coords, depth) + eval(e.args[1], coords, depth);
    case Expr::Kind::Sub: return eval(e.args[0], coords, depth) - eval(e.args[1], coords, depth);
    case Expr::Kind::Mul: return eval(e.args[0], coords, depth) * eval(e.args[1], coords, depth);
    case Expr::Kind::Neg: return -eval(e.args[0], coords, depth);
    case Expr::Kind::Pow: return eval(e.args[0], coords, depth).pow(e.exponent);
    case Expr::Kind::Call: {
      if (e.name != "exp") fail_at(e, ErrorCode::Syntax, "'" + e.name + "' cannot appear inside an expression");
      const Series f = eval(e.args[0], coords, depth);
      if (!f.constant_term().is_zero()) {
        fail_at(e, ErrorCode::NonGaussianLiteral, "exp of a nonzero constant is not a Gaussian rational");
      }
      return exp_series(f, settings_.degree);
    }
    case Expr::Kind::Keyword:
    case Expr::Kind::Tuple:
      fail_at(e, ErrorCode::Syntax, "not a scalar expression");
  }
  fail_at(e, ErrorCode::Syntax, "unsupported expression");
}

NormalHypersurface Workspace::hypersurface(const std::string& name) const {
  const Expr& e = declaration(name);
  const Settings& s = settings_;
  const std::size_t n = s.dimension;
  if (kind_of(name) == Kind::Series) {
    return NormalHypersurface(n, evaluate(e, NormalHypersurface::variable_names(n)), s.convention);
  }
  if (kind_of(name) != Kind::Hypersurface) throw Error(ErrorCode::TypeMismatch, "'" + name + "' is a map");
  if (e.name == "hypersurface") {
    return NormalHypersurface(n, evaluate(keyword(e, "Q"), NormalHypersurface::variable_names(n)), s.convention);
  }
  if (e.name == "graph") {
    auto names = NormalHypersurface::variable_names(n);
    names.back() = "s";
    return from_graph(evaluate(keyword(e, "phi"), names), n, s.convention, s.degree);
  }
  if (e.name == "heisenberg") {
    expect_args(e, 1);
    const unsigned k = small_int(e.args[0], "dimension");
    if (k < 1 || k > 7) fail_at(e, ErrorCode::InvalidArgument, "heisenberg needs 1 <= n <= 7");
    return heisenberg(k, s.convention);
  }
  if (e.name == "m_psi") {
    if (e.args.empty()) fail_at(e, ErrorCode::InvalidArgument, "m_psi needs at least one component");
    std::vector<std::string> z = NormalHypersurface::variable_names(n);
    z.resize(n);
    FormalMap psi;
    for (const auto& a : e.args) psi.components.push_back(evaluate(a, z));
    return m_psi(psi, s.convention, s.degree);
  }
  if (e.name == "blowup") {
    expect_args(e, 2);
    return blowup_hypersurface(small_int(e.args[0], "b"), small_int(e.args[1], "c"), s.degree, s.convention);
  }
  expect_args(e, 1);
  return exp_model(small_int(e.args[0], "k"), s.degree, s.convention);
}

CRMap Workspace::map(const std::string& name) const {
  const Expr& e = declaration(name);
  if (kind_of(name) != Kind::Map) throw Error(ErrorCode::TypeMismatch, "'" + name + "' is not a map");
  if (e.name == "map") {
    const auto f = components(keyword(e, "F"));
    const std::size_t n = f.size();
    const auto coords = map_coordinates(n);
    std::vector<Series> fs;
    for (const Expr* c : f) fs.push_back(evaluate(*c, coords));
    return CRMap(n, std::move(fs), evaluate(keyword(e, "G"), coords));
  }
  if (e.name == "blowup_map" || e.name == "blowup_map_unscaled") {
    expect_args(e, 2);
    const unsigned b = small_int(e.args[0], "b"), c = small_int(e.args[1], "c");
    return e.name == "blowup_map" ? blowup_map(b, c) : blowup_map_unscaled(b, c);
  }
  expect_args(e, 1);
  const unsigned k = small_int(e.args[0], "k");
  if (e.name == "tk") return tk_map(k);
  if (e.name == "hk") return hk_map(k);
  if (k < 1 || k > 7) fail_at(e, ErrorCode::InvalidArgument, "identity needs 1 <= n <= 7");
  return CRMap::identity(k);
}

}  // namespace crformal
