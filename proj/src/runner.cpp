#include <crformal/families.hpp>
#include <crformal/prolongation.hpp>
#include <crformal/runner.hpp>
#include <crformal/verify.hpp>

#include <cstdio>
#include <functional>
#include <sstream>

namespace crformal {

using ojson = nlohmann::ordered_json;

std::string fnv1a64_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct Run {
  Report report;
  ojson tasks = ojson::array();

  void error(ojson task, const Error& e) {
    ojson err = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
      err["line"] = pe->line();
      err["column"] = pe->column();
    }
    task["error"] = err;
    report.summary += "  error: " + std::string(e.what()) + "\n";
    ++report.errors;
    tasks.push_back(std::move(task));
  }

  /// Runs `body`, converting library errors into a task error entry.
  void guarded(ojson head, const std::function<void(ojson&)>& body) {
    try {
      ojson t = head;
      body(t);
      tasks.push_back(std::move(t));
    } catch (const Error& e) {
      error(std::move(head), e);
    }
  }
};

ojson header(const std::string& digest, const Settings& s) {
  ojson j;
  j["schema"] = kReportSchema;
  j["tool"] = {{"name", "crformal"}, {"version", kToolVersion}};
  j["input_digest"] = "fnv1a64:" + digest;
  j["settings"] = {{"degree", s.degree},
                   {"convention", convention_name(s.convention)},
                   {"seed", s.seed},
                   {"dimension", s.dimension}};
  return j;
}

Report finish(Run& run, ojson head) {
  head["tasks"] = std::move(run.tasks);
  head["summary"] = {{"tasks", head["tasks"].size()},
                     {"falsified", run.report.falsified},
                     {"errors", run.report.errors},
                     {"ok", run.report.ok()}};
  run.report.json = std::move(head);
  std::ostringstream os;
  os << (run.report.ok() ? "ok" : "NOT OK") << ": " << run.report.json["tasks"].size() << " task(s), "
     << run.report.falsified << " falsified, " << run.report.errors << " error(s)\n";
  run.report.summary += os.str();
  return std::move(run.report);
}

void put(ojson& t, ojson& witnesses, const std::string& key, const Verdict& v) {
  t[key] = v.label();
  if (!v.witness.empty()) witnesses[key] = v.witness;
}

ojson index_json(const MultiIndex& m) { return ojson(m.to_vector()); }

/// Polynomial text when the quotient divides out, fraction otherwise.
std::string fraction_text(const FracSeries& f, const std::vector<std::string>& names) {
  try {
    if (const auto s = f.to_series()) return s->to_string(names);
  } catch (const Error&) {
  }
  return f.to_string(names);
}

void classify_task(Run& run, const Workspace& ws, const std::string& name) {
  run.report.summary += "classify " + name + "\n";
  run.guarded({{"task", "classify"}, {"name", name}}, [&](ojson& t) {
    const NormalHypersurface m = ws.hypersurface(name);
    ojson w = ojson::object();
    t["dimension"] = m.n();
    t["Q"] = m.to_string();
    put(t, w, "valid", validate(m));
    const TypeClassification type = classify_type(m);
    t["type"] = type.label();
    if (type.witness) w["type"] = type.note.empty() ? type.witness->to_string() : type.note;
    put(t, w, "classC", is_class_C(m));
    if (type.kind == TypeClassification::Kind::InfiniteType) {
      put(t, w, "classCm", is_class_Cm(m, type.m));
      t["exceptional"] = exceptional_hypersurface(m);
    }
    put(t, w, "holomorphically_nondegenerate", is_holomorphically_nondegenerate(m));
    t["witnesses"] = w;
    run.report.summary += "  type " + type.label() + ", classC " + t["classC"].get<std::string>() +
                          ", nondegenerate " + t["holomorphically_nondegenerate"].get<std::string>() + "\n";
  });
}

void check_map_task(Run& run, const Workspace& ws, const Statement& s) {
  run.report.summary += "check-map " + s.name + " : " + s.source + " -> " + s.target + "\n";
  run.guarded({{"task", "check-map"}, {"map", s.name}, {"source", s.source}, {"target", s.target}}, [&](ojson& t) {
    const CRMap h = ws.map(s.name);
    const NormalHypersurface m = ws.hypersurface(s.source);
    const NormalHypersurface target = ws.hypersurface(s.target);
    if (h.n() != m.n() || h.n() != target.n()) {
      throw Error(ErrorCode::DimensionMismatch, "map and hypersurfaces live in different dimensions");
    }
    ojson w = ojson::object();
    t["H"] = h.to_string();
    const Verdict sends = sends_into(h, m, target);
    put(t, w, "sends_into", sends);
    put(t, w, "cr_transversal", is_cr_transversal(h));
    put(t, w, "transversally_flat", is_transversally_flat(h));
    put(t, w, "not_totally_degenerate", is_not_totally_degenerate(h));
    t["jacobian"] = jacobian(h).to_string(CRMap::variable_names(h.n()));
    put(t, w, "jac_nonzero", is_jac_nonzero(h));
    std::string trord_text;
    try {
      const TransversalOrder tr = transversal_order(h);
      if (tr.infinite) {
        t["trord"] = tr.label();
      } else {
        t["trord"] = tr.value;
        put(t, w, "trord_leading_coefficient", normal_component_reality_check(h, m, target));
      }
      trord_text = tr.label();
    } catch (const Error& e) {
      t["trord"] = "undefined";
      w["trord"] = e.what();
      trord_text = "undefined";
    }
    const TypeClassification tm = classify_type(m), tt = classify_type(target);
    const bool both_infinite = tm.kind == TypeClassification::Kind::InfiniteType &&
                               tt.kind == TypeClassification::Kind::InfiniteType;
    if (both_infinite) put(t, w, "trord_bound", trord_bound_check(h, m, target));
    if (both_infinite && s.source == s.target) put(t, w, "basic_identity", basid_check(h, m));
    put(t, w, "automorphism", is_automorphism(h));
    t["witnesses"] = w;
    run.report.summary += "  sends_into " + sends.label() + ", cr_transversal " +
                          t["cr_transversal"].get<std::string>() + ", trord " + trord_text + "\n";
  });
}

void prolong_task(Run& run, const Workspace& ws, const Statement& s) {
  run.report.summary += "prolong\n";
  run.guarded({{"task", "prolong"}}, [&](ojson& t) {
    const Expr* a_expr = nullptr;
    const Expr* alpha_expr = nullptr;
    std::vector<const Expr*> b_exprs;
    for (const auto& arg : s.value.args) {
      const Expr& v = arg.args[0];
      if (arg.name == "A") a_expr = &v;
      if (arg.name == "alpha") alpha_expr = &v;
      if (arg.name == "b") {
        if (v.kind == Expr::Kind::Tuple) {
          for (const auto& c : v.args) b_exprs.push_back(&c);
        } else {
          b_exprs.push_back(&v);
        }
      }
    }
    if (!a_expr || !alpha_expr || b_exprs.empty()) {
      throw Error(ErrorCode::InvalidArgument, "prolong needs A, b and alpha");
    }
    const std::size_t n = ws.settings().dimension;
    const auto coords = prolong_coordinates(n);
    std::vector<unsigned> alpha_v;
    auto as_uint = [](const Expr& e) {
      if (e.kind != Expr::Kind::Number || e.number.get_den() != 1 || e.number > 64) {
        throw Error(ErrorCode::InvalidArgument, "alpha entries must be small non-negative integers");
      }
      return static_cast<unsigned>(e.number.get_num().get_ui());
    };
    if (alpha_expr->kind == Expr::Kind::Tuple) {
      for (const auto& c : alpha_expr->args) alpha_v.push_back(as_uint(c));
    } else {
      alpha_v.push_back(as_uint(*alpha_expr));
    }
    if (alpha_v.size() != n) throw Error(ErrorCode::ArityMismatch, "alpha must have one entry per z variable");
    const MultiIndex alpha(std::span<const unsigned>(alpha_v.data(), alpha_v.size()));

    const Series a = ws.evaluate(*a_expr, coords);
    std::vector<Series> b;
    for (const Expr* e : b_exprs) b.push_back(ws.evaluate(*e, coords));
    const MultiIndex alpha0 = minimal_ordered_nonzero(a, n);
    ProlongationInstance inst;
    inst.n = n;
    inst.a = a;
    inst.d = b.size();
    inst.v = forward_expand(a, b, n, alpha.degree() + alpha0.degree());
    const ProlongationSolution sol = prolongation_solve_all(inst, alpha.degree());
    std::vector<std::string> chi(coords.begin() + static_cast<long>(n), coords.end());
    ojson solved = ojson::array(), direct = ojson::array();
    bool agree = true;
    for (std::size_t c = 0; c < b.size(); ++c) {
      const FracSeries expect(z_derivative_at_zero(b[c], n, alpha));
      const FracSeries& got = sol.jets.at(alpha)[c];
      solved.push_back(fraction_text(got, chi));
      direct.push_back(fraction_text(expect, chi));
      agree = agree && got == expect;
    }
    t["alpha"] = index_json(alpha);
    t["alpha0"] = index_json(alpha0);
    t["k"] = alpha0.degree();
    t["d"] = b.size();
    t["max_jet_order_used"] = sol.max_jet_order_used;
    t["solution"] = solved;
    t["direct"] = direct;
    t["round_trip"] = agree ? "certified" : "false";
    if (!agree) ++run.report.falsified;
    run.report.summary += "  alpha0 " + alpha0.to_string() + ", jets up to order " +
                          std::to_string(sol.max_jet_order_used) + ", round trip " +
                          t["round_trip"].get<std::string>() + "\n";
  });
}

ojson suite_json(const std::vector<TheoremSuiteResult>& results, Report& report) {
  ojson out = ojson::array();
  for (const auto& r : results) {
    ojson j;
    j["theorem"] = r.theorem;
    j["instance"] = r.instance;
    j["status"] = suite_status_name(r.status);
    ojson hyp = ojson::object(), con = ojson::object(), wit = ojson::object();
    for (const auto& h : r.hypotheses) {
      hyp[h.name] = h.verdict.label();
      if (!h.verdict.witness.empty()) wit[h.name] = h.verdict.witness;
    }
    for (const auto& c : r.conclusions) {
      con[c.name] = c.verdict.label();
      if (!c.verdict.witness.empty()) wit[c.name] = c.verdict.witness;
    }
    j["hypotheses"] = hyp;
    j["conclusions"] = con;
    j["witnesses"] = wit;
    if (!r.note.empty()) j["note"] = r.note;
    if (r.status == SuiteStatus::Falsified) {
      ++report.falsified;
      report.summary += "  FALSIFIED " + r.theorem + " on " + r.instance + "\n";
    }
    out.push_back(std::move(j));
  }
  return out;
}

void verify_task(Run& run, const Settings& s, const std::string& name) {
  run.report.summary += "verify " + name + "\n";
  run.guarded({{"task", "verify"}, {"suite", name}}, [&](ojson& t) {
    const auto results = run_suite(name, SuiteOptions{s.degree, s.convention, s.seed});
    t["results"] = suite_json(results, run.report);
    std::map<std::string, std::size_t> counts;
    for (const auto& r : results) ++counts[suite_status_name(r.status)];
    ojson c = ojson::object();
    std::string line = " ";
    for (SuiteStatus st : {SuiteStatus::Confirmed, SuiteStatus::HypothesisNotCertified, SuiteStatus::Inconclusive,
                           SuiteStatus::Falsified}) {
      c[suite_status_name(st)] = counts[suite_status_name(st)];
      line += std::string(" ") + suite_status_name(st) + " " + std::to_string(counts[suite_status_name(st)]);
    }
    t["counts"] = c;
    run.report.summary += line + "\n";
  });
}

/// Fixed list of example facts, each compared with the predicted value.
void examples_task(Run& run, const Settings& s) {
  run.report.summary += "examples\n";
  run.guarded({{"task", "examples"}}, [&](ojson& t) {
    const Convention conv = s.convention;
    const int d = s.degree;
    ojson items = ojson::array();
    std::size_t disagreements = 0;
    auto item = [&](const std::string& id, const std::string& what, const std::string& expected,
                    const std::string& computed) {
      const bool ok = expected == computed;
      disagreements += !ok;
      items.push_back({{"id", id}, {"check", what}, {"expected", expected}, {"computed", computed}, {"agrees", ok}});
      if (!ok) run.report.summary += "  DISAGREES " + id + ": " + what + " expected " + expected + ", got " + computed + "\n";
    };
    auto certified = [](const Verdict& v) { return v.is_true() ? std::string("true") : v.label(); };

    const NormalHypersurface h1 = heisenberg(1, conv);
    item("heisenberg1", "Q", conv == Convention::TwoI ? "tau + 2*i*z*chi" : "tau + i*z*chi", h1.to_string());
    item("heisenberg1", "type", "finite", classify_type(h1).label());

    const Series z1 = Series::polynomial_variable(2, 0), z2 = Series::polynomial_variable(2, 1);
    const NormalHypersurface mpsi = m_psi(FormalMap{{z1, z1 * z2}}, conv);
    const CRMap psi_map(2, {Series::polynomial_variable(3, 0), Series::polynomial_variable(3, 0) * Series::polynomial_variable(3, 1)},
                        Series::polynomial_variable(3, 2));
    item("m_psi", "class C", "true", certified(is_class_C(mpsi)));
    item("m_psi", "(psi, w) sends M_psi into H_2", "true", certified(sends_into(psi_map, mpsi, heisenberg(2, conv))));
    item("m_psi", "Jac (psi, w)", "z1", jacobian(psi_map).to_string(CRMap::variable_names(2)));

    for (auto [b, c] : std::vector<std::pair<unsigned, unsigned>>{{1, 1}, {2, 3}, {3, 4}, {4, 4}}) {
      const std::string id = "blowup" + std::to_string(b) + "," + std::to_string(c);
      const NormalHypersurface m = blowup_hypersurface(b, c, d, conv);
      item(id, "valid", "true", certified(validate(m)));
      item(id, "type", "infinite(" + std::to_string(2 * b - c + 1) + ")", classify_type(m).label());
    }
    item("blowup_composition", "H_{3,4} o H_{1,1}", blowup_map(4, 4).to_string(),
         compose(blowup_map(3, 4), blowup_map(1, 1)).to_string());
    item("blowup_map4,4", "H_{4,4}", "(2*z*w^4, w^4)", blowup_map(4, 4).to_string());

    const NormalHypersurface m1 = exp_model(1, d, conv);
    for (unsigned k : {2u, 3u}) {
      const std::string id = "exp_model" + std::to_string(k);
      item(id, "type", "infinite(1)", classify_type(exp_model(k, d, conv)).label());
      item(id, "T_k sends M_k into M_1", "true", certified(sends_into(tk_map(k), exp_model(k, d, conv), m1)));
      item(id, "trord T_k", std::to_string(k), transversal_order(tk_map(k)).label());
    }
    item("exp_model1", "trord H_4", "4", transversal_order(hk_map(4)).label());
    item("exp_model1", "H_4 sends M_1 into M_1", "true", certified(sends_into(hk_map(4), m1, m1)));

    const RemarkInstance r = remark_instance(d, conv);
    item("remark", "holomorphically nondegenerate", "true", certified(is_holomorphically_nondegenerate(r.m)));
    item("remark", "Jac (z, zw)", "z", jacobian(r.h).to_string(CRMap::variable_names(1)));
    item("remark", "(z, zw) CR-transversal", "false", is_cr_transversal(r.h).label());
    item("remark", "(z, zw) sends M into H_1", "false", sends_into(r.h, r.m, r.target).label());
    item("remark", "(zw, w) sends M into H_1", "true", certified(sends_into(r.h_swapped, r.m, r.target)));

    t["items"] = items;
    t["disagreements"] = disagreements;
    run.report.falsified += disagreements;
    run.report.summary += "  " + std::to_string(items.size()) + " facts, " + std::to_string(disagreements) +
                          " disagreement(s)\n";
  });
}

bool wanted(TaskFilter f, Statement::Kind k) {
  switch (f) {
    case TaskFilter::All: return true;
    case TaskFilter::Classify: return k == Statement::Kind::Classify;
    case TaskFilter::CheckMap: return k == Statement::Kind::CheckMap;
    case TaskFilter::Prolong: return k == Statement::Kind::Prolong;
    case TaskFilter::Verify: return k == Statement::Kind::Verify;
    case TaskFilter::Examples: return k == Statement::Kind::Examples;
  }
  return false;
}

Settings overridden(const Overrides& o) {
  return Workspace(Document{}, o).settings();
}

}  // namespace

Report run_document_text(const std::string& text, const Overrides& overrides, TaskFilter filter) {
  Run run;
  const std::string digest = fnv1a64_hex(text);
  Document doc;
  try {
    doc = parse_document(text);
  } catch (const Error& e) {
    run.report.summary += "parse\n";
    run.error({{"task", "parse"}}, e);
    return finish(run, header(digest, overridden(overrides)));
  }
  const Workspace ws(doc, overrides);
  std::size_t ran = 0;
  for (const Statement& s : doc.statements) {
    if (!wanted(filter, s.kind)) continue;
    switch (s.kind) {
      case Statement::Kind::Classify: classify_task(run, ws, s.name); break;
      case Statement::Kind::CheckMap: check_map_task(run, ws, s); break;
      case Statement::Kind::Prolong: prolong_task(run, ws, s); break;
      case Statement::Kind::Verify: verify_task(run, ws.settings(), s.name); break;
      case Statement::Kind::Examples: examples_task(run, ws.settings()); break;
      default: continue;
    }
    ++ran;
  }
  if (ran == 0 && filter == TaskFilter::Classify) {
    for (const Statement& s : doc.statements) {
      if (s.kind == Statement::Kind::Declare && ws.kind_of(s.name) == Workspace::Kind::Hypersurface) {
        classify_task(run, ws, s.name);
        ++ran;
      }
    }
  }
  if (ran == 0) {
    run.report.summary += "document\n";
    run.error({{"task", "document"}}, Error(ErrorCode::InvalidArgument, "the document has no matching task"));
  }
  return finish(run, header(digest, ws.settings()));
}

Report run_suites(const std::vector<std::string>& names, const Overrides& overrides) {
  Run run;
  const Settings s = overridden(overrides);
  std::string key = "suites:";
  for (const auto& n : names) key += n + ",";
  for (const auto& n : names) verify_task(run, s, n);
  return finish(run, header(fnv1a64_hex(key), s));
}

Report run_examples(const Overrides& overrides) {
  Run run;
  const Settings s = overridden(overrides);
  examples_task(run, s);
  return finish(run, header(fnv1a64_hex("examples"), s));
}

}  // namespace crformal
