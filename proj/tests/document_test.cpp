#include <crformal/families.hpp>
#include <crformal/workspace.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace crformal;

namespace {

ErrorCode parse_code(const std::string& text, int* line = nullptr, int* column = nullptr) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    if (column) *column = e.column();
    return e.code();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorCode::InvalidArgument;
}

// Seeded random syntax trees over the canonical constructs.
class AstGenerator {
 public:
  explicit AstGenerator(std::uint64_t seed) : rng_(seed) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Expr expr(int depth) {
    Expr e;
    const int choice = depth <= 0 ? pick(0, 2) : pick(0, 9);
    switch (choice) {
      case 0:
        e.kind = Expr::Kind::Number;
        e.number = mpq_class(pick(0, 30), pick(1, 6));
        e.number.canonicalize();
        break;
      case 1: e.kind = Expr::Kind::ImaginaryUnit; break;
      case 2:
        e.kind = Expr::Kind::Variable;
        e.name = std::vector<std::string>{"z", "chi", "tau"}[static_cast<std::size_t>(pick(0, 2))];
        break;
      case 3:
      case 4:
        e.kind = choice == 3 ? Expr::Kind::Add : Expr::Kind::Sub;
        e.args = {expr(depth - 1), expr(depth - 1)};
        break;
      case 5:
      case 6:
        e.kind = Expr::Kind::Mul;
        e.args = {expr(depth - 1), expr(depth - 1)};
        break;
      case 7:
        e.kind = Expr::Kind::Neg;
        e.args = {expr(depth - 1)};
        break;
      case 8:
        e.kind = Expr::Kind::Pow;
        e.exponent = static_cast<unsigned>(pick(0, 4));
        e.args = {expr(depth - 1)};
        break;
      default:
        e.kind = Expr::Kind::Call;
        e.name = "exp";
        e.args = {expr(depth - 1)};
        break;
    }
    return e;
  }

  Document document() {
    Document d;
    auto add = [&](Statement s) { d.statements.push_back(std::move(s)); };
    Statement deg;
    deg.kind = Statement::Kind::Degree;
    deg.number = static_cast<std::uint64_t>(pick(1, 20));
    add(deg);
    Statement conv;
    conv.kind = Statement::Kind::Convention;
    conv.convention = pick(0, 1) ? Convention::TwoI : Convention::I;
    add(conv);
    const int decls = pick(1, 4);
    for (int k = 0; k < decls; ++k) {
      Statement s;
      s.kind = Statement::Kind::Declare;
      s.name = "E" + std::to_string(k);
      if (pick(0, 1)) {
        s.value = expr(4);
      } else {
        s.value.kind = Expr::Kind::Call;
        s.value.name = "hypersurface";
        Expr kw;
        kw.kind = Expr::Kind::Keyword;
        kw.name = "Q";
        kw.args = {expr(3)};
        s.value.args = {kw};
      }
      add(s);
      Statement task;
      task.kind = Statement::Kind::Classify;
      task.name = s.name;
      add(task);
    }
    Statement v;
    v.kind = Statement::Kind::Verify;
    v.name = "easystuff";
    add(v);
    return d;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

TEST(Parse, HeisenbergQ) {
  const Document d = parse_document("Q = tau + 2*i*z*chi\n");
  ASSERT_EQ(d.statements.size(), 1u);
  const Workspace ws(d, {});
  EXPECT_EQ(ws.hypersurface("Q").q(), heisenberg(1).q());
}

TEST(Parse, BlowupWithOneTask) {
  const Document d = parse_document("M = blowup(2,3); classify M");
  ASSERT_EQ(d.statements.size(), 2u);
  EXPECT_EQ(d.statements[1].kind, Statement::Kind::Classify);
  EXPECT_EQ(d.statements[1].name, "M");
}

TEST(Parse, MapMatchesFamily) {
  const Workspace ws(parse_document("H = map(F = z*w, G = w)"), {});
  const CRMap h = ws.map("H");
  const CRMap ref = blowup_map(1, 1);
  EXPECT_EQ(h.f()[0], ref.f()[0]);
  EXPECT_EQ(h.g(), ref.g());
}

TEST(Parse, TwoDimensionalMapAndPsi) {
  const Workspace ws(parse_document("dimension 2\nM = m_psi(z1, z1*z2)\nH = map(F = (z1, z1*z2), G = w)\n"), {});
  EXPECT_EQ(ws.hypersurface("M").q(), m_psi(FormalMap{{Series::polynomial_variable(2, 0),
                                                          Series::polynomial_variable(2, 0) *
                                                              Series::polynomial_variable(2, 1)}})
                                          .q()
                                          .truncate(10));
  EXPECT_EQ(ws.map("H").n(), 2u);
}

TEST(Parse, MacroExpressionsEvaluateInPlace) {
  const Workspace ws(parse_document("P = z*chi\nM = hypersurface(Q = tau + 2*i*P)\n"), {});
  EXPECT_EQ(ws.hypersurface("M").q(), heisenberg(1).q());
}

TEST(Parse, Errors) {
  int line = 0, col = 0;
  EXPECT_EQ(parse_code("degree 10\nM = tau + * z", &line, &col), ErrorCode::Syntax);
  EXPECT_EQ(line, 2);
  EXPECT_EQ(col, 11);
  EXPECT_EQ(parse_code("classify M", &line, &col), ErrorCode::UndeclaredName);
  EXPECT_EQ(col, 10);
  EXPECT_EQ(parse_code("A = z + foo"), ErrorCode::UndeclaredName);
  EXPECT_EQ(parse_code("A = 1.5*z"), ErrorCode::NonGaussianLiteral);
  EXPECT_EQ(parse_code("A = sqrt(2)*z"), ErrorCode::NonGaussianLiteral);
  EXPECT_EQ(parse_code("A = z/2"), ErrorCode::Syntax);
  EXPECT_EQ(parse_code("A = sin(z)"), ErrorCode::Syntax);
  EXPECT_EQ(parse_code("z = 1"), ErrorCode::Syntax);
  EXPECT_EQ(parse_code("convention 3i"), ErrorCode::Syntax);
  EXPECT_EQ(parse_code("M = heisenberg(1)\ncheck-map M : M -> N"), ErrorCode::UndeclaredName);
}

TEST(Evaluate, ContextErrors) {
  const Workspace ws(parse_document("H = map(F = z*tau, G = w)\nE = hypersurface(Q = tau*exp(1 + z*chi))\n"), {});
  try {
    ws.map("H");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::UndeclaredName);
    EXPECT_EQ(e.column(), 15);
  }
  try {
    ws.hypersurface("E");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonGaussianLiteral);
  }
}

TEST(Settings, DocumentThenOverrides) {
  const Document d = parse_document("degree 7\nconvention i\nseed 5\n");
  EXPECT_EQ(Workspace(d, {}).settings().degree, 7);
  EXPECT_EQ(Workspace(d, {}).settings().convention, Convention::I);
  Overrides o;
  o.degree = 12;
  o.convention = Convention::TwoI;
  const Settings s = Workspace(d, o).settings();
  EXPECT_EQ(s.degree, 12);
  EXPECT_EQ(s.convention, Convention::TwoI);
  EXPECT_EQ(s.seed, 5u);
}

TEST(Print, CanonicalDocumentIsFixedPoint) {
  const std::string canonical =
      "degree 12\n"
      "convention 2i\n"
      "seed 3\n"
      "dimension 1\n"
      "M = blowup(4, 4)\n"
      "N = hypersurface(Q = tau*exp(i*z*chi*1/2) - (2/3)^2*z^2*chi^2*tau^3)\n"
      "H = map(F = z*w, G = w)\n"
      "P = -(z + chi)*-tau + z - (chi - tau)\n"
      "classify M\n"
      "check-map H : M -> N\n"
      "prolong(A = z*chi, b = (z + chi^2, 1), alpha = 1)\n"
      "verify infinite_type\n"
      "examples\n";
  EXPECT_EQ(print_document(parse_document(canonical)), canonical);
}

TEST(Print, Normalizes) {
  EXPECT_EQ(print_document(parse_document("A=((z))+ 4/6*chi ;B=A^2")), "A = z + 2/3*chi\nB = A^2\n");
}

class RoundTrip : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RoundTrip, ParsePrintIdentity) {
  AstGenerator gen(GetParam());
  const Document d = gen.document();
  const std::string text = print_document(d);
  const Document back = parse_document(text);
  EXPECT_EQ(back, d) << text;
  EXPECT_EQ(print_document(back), text);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RoundTrip, ::testing::Range<std::uint64_t>(1, 101));

TEST(Grammar, MentionsEveryTask) {
  const std::string& g = document_grammar();
  for (const char* word : {"classify", "check-map", "prolong", "verify", "examples", "exp", "blowup"}) {
    EXPECT_NE(g.find(word), std::string::npos) << word;
  }
}
