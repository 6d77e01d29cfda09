#include <crformal/document.hpp>

#include <cctype>
#include <regex>
#include <set>

namespace crformal {

ParseError::ParseError(ErrorCode code, int line, int column, const std::string& message)
    : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

bool operator==(const Expr& a, const Expr& b) {
  return a.kind == b.kind && a.number == b.number && a.name == b.name && a.exponent == b.exponent &&
         a.args == b.args;
}

bool operator==(const Statement& a, const Statement& b) {
  return a.kind == b.kind && a.name == b.name && a.source == b.source && a.target == b.target &&
         a.value == b.value && a.number == b.number && a.convention == b.convention;
}

bool is_coordinate_name(const std::string& name) {
  static const std::regex re("(z|chi)[0-9]*|tau|w|s");
  return std::regex_match(name, re);
}

namespace {

const std::set<std::string> kHypersurfaceCalls = {"hypersurface", "graph", "heisenberg", "m_psi", "blowup",
                                                   "exp_model"};
const std::set<std::string> kMapCalls = {"map", "blowup_map", "blowup_map_unscaled", "tk", "hk", "identity"};

enum class Tok { Name, Int, Symbol, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n' || c == ';') {
      out.push_back({Tok::Newline, std::string(1, c), line, col});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Name, src.substr(i, j - i), line, col});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        throw ParseError(ErrorCode::NonGaussianLiteral, line, col,
                         "decimal literal is not a Gaussian rational; write p/q");
      }
      out.push_back({Tok::Int, src.substr(i, j - i), line, col});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Symbol, "->", line, col});
      advance(2);
      continue;
    }
    if (std::string("=,()+-*^/:[]").find(c) != std::string::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), line, col});
      advance(1);
      continue;
    }
    if (static_cast<unsigned char>(c) >= 0x80) {
      throw ParseError(ErrorCode::Syntax, line, col, "non-ASCII character; use ASCII names such as chi, tau");
    }
    throw ParseError(ErrorCode::Syntax, line, col, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Document document() {
    Document doc;
    while (true) {
      while (peek().kind == Tok::Newline) ++pos_;
      if (peek().kind == Tok::End) break;
      doc.statements.push_back(statement());
      if (peek().kind != Tok::Newline && peek().kind != Tok::End) fail("expected end of statement");
    }
    return doc;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg, const Token* at = nullptr) const {
    const Token& t = at ? *at : peek();
    const std::string found = t.kind == Tok::End ? "end of input" : t.kind == Tok::Newline ? "end of statement"
                                                                                          : "'" + t.text + "'";
    throw ParseError(ErrorCode::Syntax, t.line, t.column, msg + " (found " + found + ")");
  }
  bool is_symbol(const char* s) const { return peek().kind == Tok::Symbol && peek().text == s; }
  void expect_symbol(const char* s) {
    if (!is_symbol(s)) fail(std::string("expected '") + s + "'");
    ++pos_;
  }
  std::string expect_name(const char* what) {
    if (peek().kind != Tok::Name) fail(std::string("expected ") + what);
    return next().text;
  }
  std::uint64_t expect_int(const char* what) {
    if (peek().kind != Tok::Int) fail(std::string("expected ") + what);
    const Token& t = next();
    if (t.text.size() > 19) throw ParseError(ErrorCode::Syntax, t.line, t.column, "integer too large");
    return std::stoull(t.text);
  }

  void require_declared(const Token& t) const {
    if (declared_.count(t.text) == 0) {
      throw ParseError(ErrorCode::UndeclaredName, t.line, t.column, "undeclared name '" + t.text + "'");
    }
  }

  Statement statement() {
    const Token& head = peek();
    Statement s;
    s.line = head.line;
    if (head.kind != Tok::Name) fail("expected a statement");
    const std::string word = head.text;
    if (peek(1).kind == Tok::Symbol && peek(1).text == "=") {
      ++pos_;
      ++pos_;
      s.kind = Statement::Kind::Declare;
      s.name = word;
      if (word == "i" || is_coordinate_name(word)) {
        throw ParseError(ErrorCode::Syntax, head.line, head.column, "'" + word + "' is reserved");
      }
      s.value = expr();
      check_declaration(s.value);
      declared_.insert(word);
      return s;
    }
    ++pos_;
    if (word == "degree" || word == "seed" || word == "dimension") {
      s.kind = word == "degree" ? Statement::Kind::Degree
               : word == "seed" ? Statement::Kind::Seed
                                : Statement::Kind::Dimension;
      s.number = expect_int("an integer");
      if (s.kind == Statement::Kind::Dimension && (s.number < 1 || s.number > 7)) fail("dimension must be 1..7");
      if (s.kind == Statement::Kind::Degree && s.number > 60) fail("degree must be at most 60");
      return s;
    }
    if (word == "convention") {
      s.kind = Statement::Kind::Convention;
      if (peek().kind == Tok::Int && peek().text == "2" && peek(1).kind == Tok::Name && peek(1).text == "i") {
        pos_ += 2;
        s.convention = Convention::TwoI;
      } else if (peek().kind == Tok::Name && peek().text == "i") {
        ++pos_;
        s.convention = Convention::I;
      } else {
        fail("expected 2i or i");
      }
      return s;
    }
    if (word == "classify") {
      s.kind = Statement::Kind::Classify;
      require_declared(peek());
      s.name = expect_name("a hypersurface name");
      return s;
    }
    if (word == "check" && is_symbol("-")) {
      ++pos_;
      if (peek().kind != Tok::Name || peek().text != "map") fail("expected check-map");
      ++pos_;
      s.kind = Statement::Kind::CheckMap;
      require_declared(peek());
      s.name = expect_name("a map name");
      expect_symbol(":");
      require_declared(peek());
      s.source = expect_name("a source hypersurface");
      expect_symbol("->");
      require_declared(peek());
      s.target = expect_name("a target hypersurface");
      return s;
    }
    if (word == "prolong") {
      s.kind = Statement::Kind::Prolong;
      --pos_;
      s.value = primary();
      if (s.value.kind != Expr::Kind::Call) fail("expected prolong(A = ..., b = ..., alpha = ...)");
      check_prolong(s.value);
      return s;
    }
    if (word == "verify") {
      s.kind = Statement::Kind::Verify;
      s.name = expect_name("a suite name");
      return s;
    }
    if (word == "examples") {
      s.kind = Statement::Kind::Examples;
      return s;
    }
    fail("unknown statement '" + word + "'", &head);
  }

  // expr := term { ('+'|'-') term }
  Expr expr() {
    Expr left = term();
    while (is_symbol("+") || is_symbol("-")) {
      const Token& op = next();
      Expr e;
      e.kind = op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
      e.line = op.line;
      e.column = op.column;
      e.args = {std::move(left), term()};
      left = std::move(e);
    }
    return left;
  }

  Expr term() {
    Expr left = unary();
    while (is_symbol("*")) {
      const Token& op = next();
      Expr e;
      e.kind = Expr::Kind::Mul;
      e.line = op.line;
      e.column = op.column;
      e.args = {std::move(left), unary()};
      left = std::move(e);
    }
    if (is_symbol("/")) {
      fail("division is only allowed between integer literals");
    }
    return left;
  }

  Expr unary() {
    if (is_symbol("-")) {
      const Token& op = next();
      Expr e;
      e.kind = Expr::Kind::Neg;
      e.line = op.line;
      e.column = op.column;
      e.args = {unary()};
      return e;
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!is_symbol("^")) return base;
    const Token& op = next();
    Expr e;
    e.kind = Expr::Kind::Pow;
    e.line = op.line;
    e.column = op.column;
    if (is_symbol("-")) fail("negative exponents are not power series");
    const std::uint64_t n = expect_int("a non-negative integer exponent");
    if (n > 1000) throw ParseError(ErrorCode::Syntax, op.line, op.column, "exponent too large");
    e.exponent = static_cast<unsigned>(n);
    e.args = {std::move(base)};
    return e;
  }

  Expr primary() {
    const Token& t = peek();
    Expr e;
    e.line = t.line;
    e.column = t.column;
    if (t.kind == Tok::Int) {
      ++pos_;
      e.kind = Expr::Kind::Number;
      e.number = mpq_class(mpz_class(t.text));
      if (is_symbol("/")) {
        ++pos_;
        if (peek().kind != Tok::Int) fail("expected an integer denominator");
        const Token& d = next();
        const mpz_class den(d.text);
        if (den == 0) throw ParseError(ErrorCode::Syntax, d.line, d.column, "zero denominator");
        e.number = mpq_class(mpz_class(t.text), den);
        e.number.canonicalize();
      }
      return e;
    }
    if (t.kind == Tok::Name) {
      ++pos_;
      if (is_symbol("(")) {
        e.kind = Expr::Kind::Call;
        e.name = t.text;
        if (e.name == "sqrt") {
          throw ParseError(ErrorCode::NonGaussianLiteral, t.line, t.column,
                           "sqrt leaves the Gaussian rationals; use the unscaled families instead");
        }
        ++pos_;
        if (!is_symbol(")")) {
          e.args.push_back(argument());
          while (is_symbol(",")) {
            ++pos_;
            e.args.push_back(argument());
          }
        }
        expect_symbol(")");
        return e;
      }
      if (t.text == "i") {
        e.kind = Expr::Kind::ImaginaryUnit;
        return e;
      }
      e.kind = Expr::Kind::Variable;
      e.name = t.text;
      if (!is_coordinate_name(e.name)) require_declared(t);
      return e;
    }
    if (is_symbol("(")) {
      ++pos_;
      Expr first = expr();
      if (!is_symbol(",")) {
        expect_symbol(")");
        return first;
      }
      e.kind = Expr::Kind::Tuple;
      e.args.push_back(std::move(first));
      while (is_symbol(",")) {
        ++pos_;
        e.args.push_back(expr());
      }
      expect_symbol(")");
      return e;
    }
    fail("expected an expression");
  }

  Expr argument() {
    if (peek().kind == Tok::Name && peek(1).kind == Tok::Symbol && peek(1).text == "=") {
      const Token& t = next();
      ++pos_;
      Expr e;
      e.kind = Expr::Kind::Keyword;
      e.name = t.text;
      e.line = t.line;
      e.column = t.column;
      e.args = {expr()};
      return e;
    }
    return expr();
  }

  // Family constructors only at the top of a declaration; inside
  // expressions the only function is exp.
  void check_declaration(const Expr& e) {
    if (e.kind == Expr::Kind::Call && (kHypersurfaceCalls.count(e.name) || kMapCalls.count(e.name))) {
      for (const auto& a : e.args) check_inner(a.kind == Expr::Kind::Keyword ? a.args[0] : a, true);
      return;
    }
    check_inner(e, false);
  }

  void check_inner(const Expr& e, bool tuple_ok) {
    if (e.kind == Expr::Kind::Call) {
      if (e.name != "exp") {
        throw ParseError(ErrorCode::Syntax, e.line, e.column,
                         "unknown function '" + e.name + "' (only exp may appear inside expressions)");
      }
      if (e.args.size() != 1 || e.args[0].kind == Expr::Kind::Keyword) {
        throw ParseError(ErrorCode::Syntax, e.line, e.column, "exp takes one argument");
      }
    }
    if (e.kind == Expr::Kind::Keyword) {
      throw ParseError(ErrorCode::Syntax, e.line, e.column, "keyword argument outside a constructor");
    }
    if (e.kind == Expr::Kind::Tuple && !tuple_ok) {
      throw ParseError(ErrorCode::Syntax, e.line, e.column, "tuple inside an expression");
    }
    for (const auto& a : e.args) check_inner(a, false);
  }

  void check_prolong(const Expr& call) {
    if (call.name != "prolong") fail("expected prolong(...)");
    for (const auto& a : call.args) {
      if (a.kind != Expr::Kind::Keyword || (a.name != "A" && a.name != "b" && a.name != "alpha")) {
        throw ParseError(ErrorCode::Syntax, a.line, a.column, "prolong takes A = ..., b = ..., alpha = ...");
      }
      check_inner(a.args[0], true);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> declared_;
};

int level(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    case Expr::Kind::Keyword: return 0;
    default: return 5;
  }
}

void print_into(const Expr& e, int min_level, std::string& out) {
  const bool parens = level(e) < min_level;
  if (parens) out += '(';
  switch (e.kind) {
    case Expr::Kind::Number: out += e.number.get_str(); break;
    case Expr::Kind::ImaginaryUnit: out += 'i'; break;
    case Expr::Kind::Variable: out += e.name; break;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      print_into(e.args[0], 1, out);
      out += e.kind == Expr::Kind::Add ? " + " : " - ";
      print_into(e.args[1], 2, out);
      break;
    case Expr::Kind::Mul:
      print_into(e.args[0], 2, out);
      out += '*';
      print_into(e.args[1], 3, out);
      break;
    case Expr::Kind::Neg:
      out += '-';
      print_into(e.args[0], 3, out);
      break;
    case Expr::Kind::Pow: {
      const Expr& base = e.args[0];
      // 2/3^2 would read as a literal over 3^2.
      const bool rational_base = base.kind == Expr::Kind::Number && base.number.get_den() != 1;
      if (rational_base) out += '(';
      print_into(base, rational_base ? 0 : 5, out);
      if (rational_base) out += ')';
      out += '^' + std::to_string(e.exponent);
      break;
    }
    case Expr::Kind::Call:
    case Expr::Kind::Tuple:
      out += e.name;
      out += '(';
      for (std::size_t k = 0; k < e.args.size(); ++k) {
        if (k) out += ", ";
        print_into(e.args[k], 0, out);
      }
      out += ')';
      break;
    case Expr::Kind::Keyword:
      out += e.name + " = ";
      print_into(e.args[0], 0, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

Document parse_document(const std::string& text) { return Parser(lex(text)).document(); }

std::string print_expr(const Expr& e) {
  std::string out;
  print_into(e, 0, out);
  return out;
}

std::string print_document(const Document& doc) {
  std::string out;
  for (const Statement& s : doc.statements) {
    switch (s.kind) {
      case Statement::Kind::Degree: out += "degree " + std::to_string(s.number); break;
      case Statement::Kind::Seed: out += "seed " + std::to_string(s.number); break;
      case Statement::Kind::Dimension: out += "dimension " + std::to_string(s.number); break;
      case Statement::Kind::Convention: out += std::string("convention ") + convention_name(s.convention); break;
      case Statement::Kind::Declare: out += s.name + " = " + print_expr(s.value); break;
      case Statement::Kind::Classify: out += "classify " + s.name; break;
      case Statement::Kind::CheckMap: out += "check-map " + s.name + " : " + s.source + " -> " + s.target; break;
      case Statement::Kind::Prolong: out += print_expr(s.value); break;
      case Statement::Kind::Verify: out += "verify " + s.name; break;
      case Statement::Kind::Examples: out += "examples"; break;
    }
    out += '\n';
  }
  return out;
}

const std::string& document_grammar() {
  static const std::string grammar = R"EBNF(document    = { [ statement ] ( NEWLINE | ";" ) } ;
statement   = setting | declaration | task ;
setting     = "degree" INT | "seed" INT | "dimension" INT
            | "convention" ( "2i" | "i" ) ;
declaration = NAME "=" ( constructor | expr ) ;
constructor = "hypersurface" "(" "Q" "=" expr ")"
            | "graph" "(" "phi" "=" expr ")"
            | "heisenberg" "(" INT ")"
            | "m_psi" "(" expr { "," expr } ")"
            | "blowup" "(" INT "," INT ")"
            | "exp_model" "(" INT ")"
            | "map" "(" "F" "=" ( expr | tuple ) "," "G" "=" expr ")"
            | "blowup_map" "(" INT "," INT ")"
            | "blowup_map_unscaled" "(" INT "," INT ")"
            | "tk" "(" INT ")" | "hk" "(" INT ")" | "identity" "(" INT ")" ;
task        = "classify" NAME
            | "check-map" NAME ":" NAME "->" NAME
            | "prolong" "(" "A" "=" expr "," "b" "=" ( expr | tuple ) "," "alpha" "=" ( INT | tuple ) ")"
            | "verify" ( "finite_type" | "infinite_type" | "easystuff" )
            | "examples" ;
expr        = term { ( "+" | "-" ) term } ;
term        = unary { "*" unary } ;
unary       = "-" unary | power ;
power       = primary [ "^" INT ] ;
primary     = INT [ "/" INT ] | "i" | NAME | "exp" "(" expr ")" | "(" expr ")" ;
tuple       = "(" expr "," expr { "," expr } ")" ;

Coordinates: z, chi, tau (hypersurfaces, n = 1) or z1.., chi1.., tau;
s replaces tau in graph(...); z.., w in maps; z.., chi.. in prolong.
A NAME bound to a plain expression may be used inside later expressions
and evaluates in the coordinates of the place where it is used.
"#" starts a comment. Literals are Gaussian rationals: p/q and i.
)EBNF";
  return grammar;
}

}  // namespace crformal
