#include <crformal/cr_map.hpp>
#include <crformal/error.hpp>
#include <crformal/families.hpp>
#include <crformal/series_matrix.hpp>
#include <crformal/verify.hpp>

#include <functional>
#include <optional>
#include <sstream>

namespace crformal {

const char* suite_status_name(SuiteStatus s) noexcept {
  switch (s) {
    case SuiteStatus::Confirmed: return "Confirmed";
    case SuiteStatus::HypothesisNotCertified: return "HypothesisNotCertified";
    case SuiteStatus::Falsified: return "FALSIFIED";
    case SuiteStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

SuiteStatus decide(const std::vector<NamedVerdict>& hypotheses, const std::vector<NamedVerdict>& conclusions) {
  for (const auto& h : hypotheses) {
    if (!h.verdict.is_true()) return SuiteStatus::HypothesisNotCertified;
  }
  bool all_true = true;
  for (const auto& c : conclusions) {
    if (c.verdict.is_false()) return SuiteStatus::Falsified;
    all_true = all_true && c.verdict.is_true();
  }
  return all_true ? SuiteStatus::Confirmed : SuiteStatus::Inconclusive;
}

namespace {

Verdict negated(const Verdict& v) {
  Verdict r = v;
  if (v.is_true()) r.status = Status::CertifiedFalse;
  if (v.is_false()) r.status = Status::CertifiedTrue;
  return r;
}

Verdict either(const Verdict& a, const Verdict& b) {
  if (a.is_true()) return a;
  if (b.is_true()) return b;
  if (a.is_false() && b.is_false()) {
    return Verdict::certified_false(min(a.degree_used, b.degree_used), a.witness + "; " + b.witness);
  }
  return Verdict::unknown(min(a.degree_used, b.degree_used), a.witness + "; " + b.witness);
}

Verdict arithmetic(bool holds, const std::string& text) {
  return holds ? Verdict::certified_true(Precision::exact(), text)
               : Verdict::certified_false(Precision::exact(), text);
}

/// Evaluates `f`, turning library errors into an Unknown verdict so one bad
/// instance cannot take down a whole suite.
Verdict guarded(const std::function<Verdict()>& f) {
  try {
    return f();
  } catch (const Error& e) {
    return Verdict::unknown(Precision::upto(-1), std::string(error_code_name(e.code())) + ": " + e.what());
  }
}

Verdict infinite_type_verdict(const TypeClassification& t) {
  if (t.kind == TypeClassification::Kind::InfiniteType) {
    return Verdict::certified_true(t.degree_used, "m = " + std::to_string(t.m));
  }
  if (t.kind == TypeClassification::Kind::FiniteType) {
    return Verdict::certified_false(t.degree_used, "finite type", t.witness);
  }
  return Verdict::unknown(t.degree_used, "type unknown: " + t.note);
}

TheoremSuiteResult make(std::string suite, std::string theorem, std::string instance,
                        std::vector<NamedVerdict> hypotheses, std::vector<NamedVerdict> conclusions,
                        std::string note = {}) {
  TheoremSuiteResult r;
  r.suite = std::move(suite);
  r.theorem = std::move(theorem);
  r.instance = std::move(instance);
  r.status = decide(hypotheses, conclusions);
  r.hypotheses = std::move(hypotheses);
  r.conclusions = std::move(conclusions);
  r.note = std::move(note);
  return r;
}

Series var(std::size_t arity, std::size_t i) { return Series::polynomial_variable(arity, i); }
Series zero(std::size_t arity) { return Series(arity, Precision::exact()); }

struct MapInstance {
  std::string id;
  NormalHypersurface m;
  NormalHypersurface target;
  CRMap h;
  bool self = false;
  std::string note;
};

// ---------------------------------------------------------------------------
// finite type

std::vector<MapInstance> finite_registry(const SuiteOptions& o) {
  const Convention conv = o.convention;
  std::vector<MapInstance> out;
  const Series z1 = var(2, 0), z2 = var(2, 1);
  const FormalMap psi{{z1, z1 * z2}};
  const Series w3 = var(3, 2);
  const CRMap psi_map(2, {var(3, 0), var(3, 0) * var(3, 1)}, w3);
  out.push_back({"psi_into_heisenberg2", m_psi(psi, conv), heisenberg(2, conv), psi_map, false, ""});
  out.push_back({"identity_heisenberg1", heisenberg(1, conv), heisenberg(1, conv), CRMap::identity(1), true, ""});
  out.push_back({"identity_heisenberg2", heisenberg(2, conv), heisenberg(2, conv), CRMap::identity(2), true, ""});
  out.push_back({"dilation_heisenberg1", heisenberg(1, conv), heisenberg(1, conv),
                 CRMap(1, {var(2, 0) * Scalar(2)}, var(2, 1) * Scalar(4)), true, ""});
  out.push_back({"flat_into_heisenberg1", heisenberg(1, conv), heisenberg(1, conv), CRMap(1, {zero(2)}, zero(2)),
                 true, "transversally flat control"});
  const RemarkInstance remark = remark_instance(o.degree, conv);
  out.push_back({"remark_zw_w", remark.m, remark.target, remark.h_swapped, false, ""});
  out.push_back({"remark_z_zw", remark.m, remark.target, remark.h, false, ""});
  return out;
}

std::string remark_resolution(int degree) {
  std::ostringstream os;
  os << "sends_into resolution:";
  for (Convention conv : {Convention::TwoI, Convention::I}) {
    const RemarkInstance r = remark_instance(degree, conv);
    os << " [" << convention_name(conv) << "] (z,zw): " << guarded([&] { return sends_into(r.h, r.m, r.target); }).label()
       << ", (zw,w): " << guarded([&] { return sends_into(r.h_swapped, r.m, r.target); }).label() << ';';
  }
  return os.str();
}

}  // namespace

std::vector<TheoremSuiteResult> suite_finite_type(const SuiteOptions& o) {
  const std::string suite = "finite_type";
  std::vector<TheoremSuiteResult> out;
  for (const MapInstance& inst : finite_registry(o)) {
    const Verdict class_c = guarded([&] { return is_class_C(inst.m); });
    const Verdict nondeg = guarded([&] { return is_holomorphically_nondegenerate(inst.m); });
    const Verdict sends = guarded([&] { return sends_into(inst.h, inst.m, inst.target); });
    const Verdict transversal = guarded([&] { return is_cr_transversal(inst.h); });
    const Verdict nonflat = negated(guarded([&] { return is_transversally_flat(inst.h); }));
    const Verdict ntd = guarded([&] { return is_not_totally_degenerate(inst.h); });
    const Verdict jac = guarded([&] { return is_jac_nonzero(inst.h); });

    out.push_back(make(suite, "nonflat_class_c_map_is_transversal", inst.id,
                       {{"class_C(M)", class_c}, {"sends_into", sends}, {"transversally_nonflat", nonflat}},
                       {{"not_totally_degenerate", ntd}, {"cr_transversal", transversal}}, inst.note));
    out.push_back(make(suite, "jacobian_map_is_transversal", inst.id,
                       {{"class_C(M)", class_c}, {"sends_into", sends}, {"jac_nonzero", jac}},
                       {{"cr_transversal", transversal}}, inst.note));
    Verdict equivalence = Verdict::unknown(min(transversal.degree_used, ntd.degree_used),
                                           "one side is not certified");
    if (!transversal.is_unknown() && !ntd.is_unknown()) {
      equivalence = arithmetic(transversal.status == ntd.status,
                               std::string("cr_transversal = ") + transversal.label() +
                                   ", not_totally_degenerate = " + ntd.label());
      equivalence.degree_used = min(transversal.degree_used, ntd.degree_used);
    }
    out.push_back(make(suite, "transversal_iff_not_totally_degenerate", inst.id,
                       {{"class_C(M)", class_c}, {"sends_into", sends}}, {{"equivalence", equivalence}},
                       inst.note));
    out.push_back(make(suite, "nondegenerate_nonflat_map_has_jacobian", inst.id,
                       {{"holomorphically_nondegenerate(M)", nondeg}, {"sends_into", sends},
                        {"transversally_nonflat", nonflat}},
                       {{"jac_nonzero", jac}}, inst.note));
    out.push_back(make(suite, "class_c_implies_nondegenerate", inst.id, {{"class_C(M)", class_c}},
                       {{"holomorphically_nondegenerate(M)", nondeg}}, inst.note));
    // Holds for any pair in normal coordinates, not only infinite type.
    out.push_back(make(suite, "trord_leading_coefficient_is_real", inst.id,
                       {{"sends_into", sends}, {"transversally_nonflat", nonflat}},
                       {{"normal_component_reality",
                         guarded([&] { return normal_component_reality_check(inst.h, inst.m, inst.target); })}},
                       inst.note));
  }

  // The separation example: Jac H != 0 without CR-transversality.
  const RemarkInstance remark = remark_instance(o.degree, o.convention);
  out.push_back(make(suite, "jacobian_without_transversality", "remark_z_zw",
                     {{"holomorphically_nondegenerate(M)",
                       guarded([&] { return is_holomorphically_nondegenerate(remark.m); })}},
                     {{"jac_nonzero", guarded([&] { return is_jac_nonzero(remark.h); })},
                      {"not_cr_transversal", negated(guarded([&] { return is_cr_transversal(remark.h); }))}},
                     remark_resolution(o.degree)));
  return out;
}

// ---------------------------------------------------------------------------
// infinite type

namespace {

std::vector<MapInstance> infinite_registry(const SuiteOptions& o) {
  const Convention conv = o.convention;
  const int d = o.degree;
  std::vector<MapInstance> out;
  // H_{1,1} sends M_{b+1,c} into M_{b,c}.
  for (auto [b, c] : std::vector<std::pair<unsigned, unsigned>>{{1, 1}, {2, 1}, {2, 3}, {3, 4}}) {
    std::ostringstream id;
    id << "blowup11_M" << b + 1 << ',' << c << "_to_M" << b << ',' << c;
    out.push_back({id.str(), blowup_hypersurface(b + 1, c, d, conv), blowup_hypersurface(b, c, d, conv),
                   blowup_map(1, 1), false, ""});
  }
  const NormalHypersurface m1 = exp_model(1, d, conv);
  for (unsigned k : {2u, 3u}) {
    out.push_back({"T" + std::to_string(k) + "_Mexp" + std::to_string(k) + "_to_Mexp1", exp_model(k, d, conv), m1,
                   tk_map(k), false, ""});
  }
  out.push_back({"H4_on_Mexp1", m1, m1, hk_map(4), true, "no trord bound at m' = 1"});

  const NormalHypersurface m23 = blowup_hypersurface(2, 3, d, conv);
  const std::vector<std::pair<std::string, CRMap>> self_maps = {
      {"neg", CRMap(1, {-var(2, 0)}, var(2, 1))},
      {"rot", CRMap(1, {var(2, 0) * Scalar::i()}, var(2, 1))},
      {"dil2", CRMap(1, {var(2, 0) * Scalar(2)}, var(2, 1))},
      {"flat", CRMap(1, {zero(2)}, zero(2))},
  };
  for (const auto& [name, h] : self_maps) out.push_back({name + "_on_M2,3", m23, m23, h, true, ""});
  // The trord bound (m' - 1) * 4 <= m - 1 fails, so this cannot map.
  out.push_back({"H4_on_M2,3", m23, m23, hk_map(4), true, "excluded by the trord bound"});
  for (unsigned k : {2u, 3u}) {
    const NormalHypersurface mk = exp_model(k, d, conv);
    for (const auto& [name, h] : self_maps) {
      if (name == "flat") continue;
      out.push_back({name + "_on_Mexp" + std::to_string(k), mk, mk, h, true, ""});
    }
  }
  return out;
}

}  // namespace

std::vector<TheoremSuiteResult> suite_infinite_type(const SuiteOptions& o) {
  const std::string suite = "infinite_type";
  std::vector<TheoremSuiteResult> out;
  std::vector<std::string> window;
  for (const MapInstance& inst : infinite_registry(o)) {
    const TypeClassification tm = classify_type(inst.m);
    const TypeClassification tt = classify_type(inst.target);
    const Verdict m_inf = infinite_type_verdict(tm);
    const Verdict t_inf = infinite_type_verdict(tt);
    const Verdict sends = guarded([&] { return sends_into(inst.h, inst.m, inst.target); });
    const Verdict transversal = guarded([&] { return is_cr_transversal(inst.h); });
    const Verdict flat = guarded([&] { return is_transversally_flat(inst.h); });
    const Verdict nonflat = negated(flat);
    const unsigned m = tm.m, mp = tt.m;
    const std::string mm = "m = " + std::to_string(m) + ", m' = " + std::to_string(mp);

    out.push_back(make(suite, "trord_leading_coefficient_is_real", inst.id,
                       {{"sends_into", sends}, {"transversally_nonflat", nonflat}},
                       {{"normal_component_reality",
                         guarded([&] { return normal_component_reality_check(inst.h, inst.m, inst.target); })}},
                       inst.note));
    out.push_back(make(suite, "trord_bound", inst.id,
                       {{"infinite_type(M)", m_inf}, {"infinite_type(M')", t_inf}, {"sends_into", sends},
                        {"transversally_nonflat", nonflat}},
                       {{"trord_bound", guarded([&] { return trord_bound_check(inst.h, inst.m, inst.target); })}},
                       inst.note));
    if (inst.note == "no trord bound at m' = 1") {
      const TransversalOrder tr = transversal_order(inst.h);
      out.push_back(make(suite, "trord_unbounded_at_m1", inst.id,
                         {{"infinite_type(M')", t_inf}, {"m' = 1", arithmetic(mp == 1, mm)}, {"sends_into", sends}},
                         {{"trord = 4", arithmetic(!tr.infinite && tr.value == 4, "trord = " + tr.label())}},
                         "negative control: m' = 1 admits maps of any transversal order"));
    }
    const bool in_window = m_inf.is_true() && t_inf.is_true() && 1 < mp && mp <= m && m + 1 < 2 * mp;
    if (in_window && sends.is_true()) window.push_back(inst.id);
    out.push_back(make(suite, "no_maps_window", inst.id,
                       {{"infinite_type(M)", m_inf}, {"infinite_type(M')", t_inf},
                        {"1 < m' <= m < 2m' - 1", arithmetic(in_window, mm)}, {"sends_into", sends}},
                       {{"transversal_or_exceptional", either(transversal, flat)}}, inst.note));

    if (!inst.self) continue;
    const Verdict m_ge2 = arithmetic(m_inf.is_true() && m >= 2, mm);
    out.push_back(make(suite, "self_map_transversal_or_exceptional", inst.id,
                       {{"infinite_type(M)", m_inf}, {"m >= 2", m_ge2}, {"sends_into", sends}},
                       {{"transversal_or_exceptional", either(transversal, flat)}}, inst.note));
    out.push_back(make(suite, "basic_identity", inst.id,
                       {{"infinite_type(M)", m_inf}, {"cr_transversal", transversal}, {"sends_into", sends}},
                       {{"basic_identity", guarded([&] { return basid_check(inst.h, inst.m); })}}, inst.note));
    const Verdict class_cm =
        m_inf.is_true() ? guarded([&] { return is_class_Cm(inst.m, m); }) : Verdict::unknown(tm.degree_used, "type");
    const Verdict automorphism = guarded([&] { return is_automorphism(inst.h); });
    out.push_back(make(suite, "class_cm_self_map_automorphism_or_exceptional", inst.id,
                       {{"class_C_m(M)", class_cm}, {"m >= 2", m_ge2}, {"sends_into", sends}},
                       {{"automorphism_or_exceptional", either(automorphism, flat)}}, inst.note));
    out.push_back(make(suite, "transversal_class_cm_self_map_is_automorphism", inst.id,
                       {{"class_C_m(M)", class_cm}, {"cr_transversal", transversal}, {"sends_into", sends}},
                       {{"automorphism", automorphism}}, inst.note));
  }
  std::string searched = "window 1 < m' <= m < 2m' - 1 inhabited by:";
  for (const auto& id : window) searched += " " + id;
  if (window.empty()) searched += " none (vacuously confirmed)";
  for (auto& r : out) {
    if (r.theorem == "no_maps_window") r.note = r.note.empty() ? searched : r.note + "; " + searched;
  }
  return out;
}

// ---------------------------------------------------------------------------
// pullback automorphism

Verdict pullback_relation(const Series& a, const FormalMap& b, const Scalar& r) {
  const std::size_t n = b.size();
  if (a.arity() != 2 * n) throw Error(ErrorCode::ArityMismatch, "A must live in (z, chi) with |z| = |chi| = |B|");
  std::vector<std::size_t> zpos(n), chipos(n);
  for (std::size_t i = 0; i < n; ++i) {
    zpos[i] = i;
    chipos[i] = n + i;
  }
  FormalMap sub;
  for (const auto& c : b.components) sub.components.push_back(embed(c, 2 * n, zpos));
  for (const auto& c : b.components) sub.components.push_back(embed(conjugate(c), 2 * n, chipos));
  const Series diff = a - compose(a, sub) * r;
  if (const auto lead = diff.leading_term()) {
    return Verdict::certified_false(diff.precision(),
                                    "A - r A(B, conj B) has " + lead->second.to_string() + " at " + lead->first.to_string(),
                                    lead->first);
  }
  return Verdict::certified_true(diff.precision(), "A = r A(B(z), conj(B)(chi))");
}

std::vector<TheoremSuiteResult> suite_easystuff(const SuiteOptions& o) {
  const std::string suite = "easystuff";
  struct Instance {
    std::string id;
    Series a;
    FormalMap b;
    Scalar r;
  };
  const Series z2 = var(4, 0) * var(4, 2) + var(4, 1) * var(4, 3);
  const Series zc = var(2, 0) * var(2, 1);
  const Series expo = exp_series(zc * Scalar::i(), o.degree) - Series::constant(2, 1, Precision::upto(o.degree));
  const std::vector<Instance> instances = {
      {"hermitian2_minus_identity", z2, FormalMap{{-var(2, 0), -var(2, 1)}}, Scalar(1)},
      {"exp_minus_identity", expo, FormalMap{{-var(1, 0)}}, Scalar(1)},
      {"hermitian1_rotation", zc, FormalMap{{var(1, 0) * Scalar::i()}}, Scalar(1)},
      {"hermitian1_dilation", zc, FormalMap{{var(1, 0) * Scalar(2)}}, Scalar::rational(1, 4)},
      {"hermitian1_square", zc, FormalMap{{var(1, 0).pow(2)}}, Scalar(1)},
  };
  std::vector<TheoremSuiteResult> out;
  for (const auto& inst : instances) {
    const std::size_t n = inst.b.size();
    const unsigned k_max = inst.a.is_exact() ? std::max(1u, inst.a.max_degree()) : static_cast<unsigned>(o.degree / 2);
    const Verdict rank = guarded([&] { return coefficient_family_rank(inst.a, n, n, k_max); });
    const Verdict relation = guarded([&] { return pullback_relation(inst.a, inst.b, inst.r); });
    const Verdict det = guarded([&] {
      std::vector<std::vector<Scalar>> lin(n, std::vector<Scalar>(n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          lin[i][j] = inst.b.components[i].coefficient(MultiIndex::unit(n, j));
        }
      }
      const std::size_t rk = scalar_rank(lin);
      return arithmetic(rk == n, "rank dB(0) = " + std::to_string(rk) + " of " + std::to_string(n));
    });
    out.push_back(make(suite, "pullback_map_is_automorphism", inst.id,
                       {{"generic_rank_n", rank}, {"relation", relation}}, {{"det_dB(0) != 0", det}}));
  }
  return out;
}

std::vector<std::string> suite_names() { return {"finite_type", "infinite_type", "easystuff"}; }

std::vector<TheoremSuiteResult> run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "finite_type") return suite_finite_type(options);
  if (name == "infinite_type") return suite_infinite_type(options);
  if (name == "easystuff") return suite_easystuff(options);
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace crformal
