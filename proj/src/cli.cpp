#include "hoch/cli.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include <omp.h>

#include "hoch/errors.hpp"
#include "hoch/laurent.hpp"
#include "hoch/obstruction.hpp"
#include "hoch/props.hpp"
#include "hoch/spectral.hpp"

namespace hoch::cli {

using io::Json;

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"validate", "hh",      "props",          "e-page",
                                              "obstruct", "extend",  "collapse-check", "section8"};
  return names;
}

namespace {

struct Result {
  Json results = Json::object();
  int exit_code = 0;
  std::ostringstream text;
};

int param_int(const io::InputDocument& d, const char* key, int fallback) {
  if (!d.params.contains(key)) return fallback;
  const Json& v = d.params[key];
  if (!v.is_number_integer()) throw ConfigError(std::string("$.params.") + key + ": expected an integer");
  return v.get<int>();
}

std::pair<int, int> param_range(const io::InputDocument& d, const char* key, std::pair<int, int> fallback) {
  if (!d.params.contains(key)) return fallback;
  const Json& v = d.params[key];
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer() ||
      v[0].get<int>() > v[1].get<int>())
    throw ConfigError(std::string("$.params.") + key + ": expected [lo, hi] with lo <= hi");
  return {v[0].get<int>(), v[1].get<int>()};
}

AlgebraPtr need_algebra(const io::InputDocument& d) {
  if (!d.algebra) throw ConfigError("$: this command needs an algebra block");
  ValidationReport v = validate_algebra(*d.algebra);
  if (!v.ok()) {
    const Violation& w = v.violations.front();
    std::string at;
    for (const auto& n : w.witness) at += (at.empty() ? "" : ",") + n;
    throw ValidationError("invalid algebra: " + w.kind + " at (" + at + ") " + w.detail);
  }
  return d.algebra;
}

const AInfStructure& need_structure(const io::InputDocument& d, int min_k) {
  need_algebra(d);
  if (!d.structure) throw ConfigError("$: this command needs a structure block");
  if (d.structure->k() < min_k)
    throw ConfigError("$.structure.k: this command needs k >= " + std::to_string(min_k));
  return *d.structure;
}

Complex complex_of(const io::InputDocument& d) {
  if (d.params.contains("complex")) {
    if (!d.params["complex"].is_string()) throw ConfigError("$.params.complex: expected a string");
    return parse_complex(d.params["complex"].get<std::string>());
  }
  return d.algebra && d.algebra->has_vertices() ? Complex::Relative : Complex::Normalized;
}

Json pair_json(int a, int b) { return Json::array({a, b}); }

Json class_json(Cohomology& h, const CohomClass& c) {
  const HHSpace& sp = h.space(c.p, c.q);
  return {{"bidegree", pair_json(c.p, c.q)},
          {"dim", sp.dim},
          {"zero", c.is_zero()},
          {"coordinates", io::dense_json(c.coordinates, sp.dim, h.algebra()->field())},
          {"representative", io::cochain_json(c.representative)}};
}

Json certificate_json(Cohomology& h, const CoboundaryCertificate& c, const Cochain& z) {
  return {{"complex", to_string(c.kind)},
          {"bidegree", pair_json(c.p, c.q)},
          {"cochain_dim", h.cochains(c.p, c.q, c.kind).dim()},
          {"functional", io::sparse_json(c.functional)},
          {"rechecked", h.check_certificate(c, z)}};
}

Json page3_json(const Page3Result& r, const Field& f) {
  Json lin = Json::array(), sq = Json::array(), cross = Json::array();
  for (const auto& v : r.data.linear) lin.push_back(io::sparse_json(v));
  for (const auto& v : r.data.square) sq.push_back(io::sparse_json(v));
  for (const auto& row : r.data.cross) {
    Json jr = Json::array();
    for (const auto& v : row) jr.push_back(io::sparse_json(v));
    cross.push_back(jr);
  }
  Json out = {{"status", to_string(r.status)},
              {"reason", r.reason},
              {"method", r.data.method},
              {"candidates", r.data.candidates},
              {"target", io::sparse_json(r.data.target)},
              {"linear", lin},
              {"square", sq},
              {"cross", cross},
              {"functional", io::sparse_json(r.data.functional)}};
  if (r.status == Page3Status::Vanishes) {
    out["b_prev_coordinates"] = io::sparse_json(r.coordinates);
    if (r.b_prev) out["b_prev"] = io::cochain_json(*r.b_prev);
    if (r.b_top) out["b_top"] = io::cochain_json(*r.b_top);
  }
  if (r.status == Page3Status::Nonzero) out["rechecked"] = check_page3_nonzero(r.data, f);
  return out;
}

Json obstruction_json(Cohomology& h, const ObstructionReport& r) {
  Json out = {{"k", r.k}, {"l", r.l}, {"cochain_vanishes", r.cochain_vanishes}};
  if (!r.cochain_vanishes) {
    const GradedAlgebra& a = *h.algebra();
    const auto& [t, v] = *r.cocycle.table().begin();
    Json in = Json::array();
    for (int i : t) in.push_back(a.name(i));
    out["cocycle_nonzero_entry"] = {{"inputs", in}, {"value", io::vec_json(a, v)}};
  }
  if (r.page2_class) out["page2_class"] = class_json(h, *r.page2_class);
  if (r.page2_witness) out["page2_witness"] = io::cochain_json(*r.page2_witness);
  if (r.page2_certificate) out["page2_certificate"] = certificate_json(h, *r.page2_certificate, r.cocycle);
  if (r.page3) out["page3"] = page3_json(*r.page3, h.algebra()->field());
  return out;
}

int failure_code(const ObstructionReport& r) {
  return r.page3 && r.page3->status == Page3Status::Undecided ? 3 : 2;
}

void cmd_validate(const io::InputDocument& d, Result& res) {
  if (!d.algebra) throw ConfigError("$: this command needs an algebra block");
  const GradedAlgebra& a = *d.algebra;
  ValidationReport v = validate_algebra(a);
  Json viol = Json::array();
  for (const auto& w : v.violations) viol.push_back({{"kind", w.kind}, {"witness", w.witness}, {"detail", w.detail}});
  res.results["algebra"] = {{"dim", a.dim()}, {"field", a.field().name()}, {"ok", v.ok()}, {"violations", viol}};
  res.text << "algebra: dim " << a.dim() << ", " << (v.ok() ? "valid" : "invalid") << "\n";
  bool ok = v.ok();
  if (d.structure && v.ok()) {
    AInfReport r = is_valid(*d.structure);
    Json sv = Json::array();
    for (const auto& w : r.violations) {
      Json in = Json::array();
      for (int i : w.witness) in.push_back(a.name(i));
      sv.push_back({{"n", w.n}, {"inputs", in}, {"value", io::vec_json(a, w.value)}});
    }
    res.results["structure"] = {{"k", d.structure->k()}, {"m2_ok", r.m2_ok}, {"ok", r.ok()}, {"violations", sv}};
    res.text << "structure: A_" << d.structure->k() << ", " << (r.ok() ? "valid" : "invalid") << "\n";
    ok = ok && r.ok();
  }
  res.exit_code = ok ? 0 : 1;
}

void cmd_hh(const io::InputDocument& d, Result& res) {
  AlgebraPtr a = need_algebra(d);
  Cohomology h(a, complex_of(d));
  const int p_lo = param_int(d, "p_min", 0), p_hi = param_int(d, "p_max", 4);
  const bool bases = !d.params.contains("bases") || d.params["bases"].get<bool>();
  Json spaces = Json::array();
  for (int p = p_lo; p <= p_hi; ++p) {
    const auto q_range = param_range(d, "q_range", q_support(*a, p));
    for (int q = q_range.first; q <= q_range.second; ++q) {
      const HHSpace& sp = h.space(p, q);
      Json s = {{"bidegree", pair_json(p, q)},
                {"dim", sp.dim},
                {"cochain_dim", sp.cochain_dim()},
                {"cocycle_dim", sp.cocycles.size()},
                {"coboundary_dim", sp.coboundaries.size()}};
      if (bases) {
        Json b = Json::array();
        for (const auto& c : sp.hh_basis) b.push_back(io::cochain_json(c));
        s["basis"] = b;
      }
      spaces.push_back(s);
      res.text << "HH^{" << p << "," << q << "} dim " << sp.dim << "\n";
    }
  }
  res.results = {{"complex", to_string(h.kind())}, {"spaces", spaces}};
}

void cmd_props(const io::InputDocument& d, const Flags& f, Result& res) {
  AlgebraPtr a = need_algebra(d);
  const int trials = f.trials.value_or(param_int(d, "trials", 200));
  if (trials < 1) throw ConfigError("--trials must be positive");
  PropsReport rep = run_identity_suite(a, trials, f.seed, param_int(d, "max_arity", 3));
  Json ids = Json::array();
  for (const auto& o : rep.identities) {
    ids.push_back({{"name", o.name},
                   {"checked", o.checked},
                   {"nontrivial", o.nontrivial},
                   {"skipped", o.skipped},
                   {"failed", o.failed},
                   {"first_failure", o.first_failure}});
    res.text << (o.failed ? "FAIL " : "PASS ") << o.name << " (" << o.checked << " checked)\n";
  }
  res.results = {{"trials", trials}, {"ok", rep.ok()}, {"identities", ids}};
  res.exit_code = rep.ok() ? 0 : 2;
}

void cmd_epage(const io::InputDocument& d, const Flags& f, Result& res) {
  AlgebraPtr a = need_algebra(d);
  const int r = f.page.value_or(param_int(d, "page", 2));
  if (r < 1 || r > 3) throw ConfigError("--page must be 1, 2 or 3");
  const auto s_range = param_range(d, "s_range", {0, 5}), t_range = param_range(d, "t_range", {-2, 5});
  Cohomology h(a, complex_of(d));
  std::optional<SpectralSequence> ss;
  if (r == 3)
    ss.emplace(h, need_structure(d, 5));
  else
    ss.emplace(h);
  PageReport rep = ss->page(r, s_range, t_range);
  Json cells = Json::array(), diffs = Json::array();
  for (const auto& c : rep.cells)
    cells.push_back({{"s", c.s}, {"t", c.t}, {"kind", to_string(c.kind)}, {"dim", c.dim}, {"note", c.note}});
  for (const auto& df : rep.differentials)
    diffs.push_back({{"s", df.s},
                     {"t", df.t},
                     {"rows", df.matrix.rows()},
                     {"cols", df.matrix.cols()},
                     {"rank", rank(df.matrix)}});
  const std::string grid = grid_summary(rep);
  res.results = {{"page", r},
                 {"complex", to_string(h.kind())},
                 {"s_range", pair_json(s_range.first, s_range.second)},
                 {"t_range", pair_json(t_range.first, t_range.second)},
                 {"cells", cells},
                 {"differentials", diffs},
                 {"grid", grid}};
  res.text << grid;
}

void cmd_obstruct(const io::InputDocument& d, const Flags& f, Result& res) {
  const int page = f.page.value_or(param_int(d, "page", 2));
  if (page != 2 && page != 3) throw ConfigError("--page must be 2 or 3 for obstruct");
  const AInfStructure& s = need_structure(d, page == 2 ? 3 : 4);
  Cohomology h(s.algebra(), complex_of(d));
  const int k = s.k();
  res.results["k"] = k;
  res.results["page"] = page;
  if (page == 2) {
    Cochain z = obstruction_cocycle(s);
    CohomClass th = theta_page2(s, h);
    res.results["cochain_vanishes"] = z.is_zero();
    res.results["class"] = class_json(h, th);
    if (th.is_zero()) {
      if (auto w = h.coboundary_witness(z)) res.results["witness"] = io::cochain_json(*w);
      res.exit_code = 0;
    } else {
      if (auto c = h.non_coboundary_certificate(z)) res.results["certificate"] = certificate_json(h, *c, z);
      res.exit_code = 2;
    }
    if (k == 4) {
      CohomClass sq_class = h.induced_sq(universal_massey(s, h));
      res.results["massey_square"] = class_json(h, sq_class);
      res.results["equals_massey_square"] = sq_class.coordinates == th.coordinates;
    }
    res.text << "page-2 obstruction of A_" << k << ": " << (th.is_zero() ? "vanishes" : "nonzero") << "\n";
  } else {
    Page3Options opt;
    opt.enumeration_limit = static_cast<std::size_t>(param_int(d, "enumeration_limit", 1000000));
    Page3Result r = theta_page3_check(s, h, opt);
    res.results["page3"] = page3_json(r, s.algebra()->field());
    res.exit_code = r.status == Page3Status::Vanishes ? 0 : r.status == Page3Status::Nonzero ? 2 : 3;
    res.text << "page-3 obstruction of A_" << k << ": " << to_string(r.status) << "\n";
  }
}

void cmd_extend(const io::InputDocument& d, Result& res) {
  const AInfStructure& s = need_structure(d, 2);
  Cohomology h(s.algebra(), complex_of(d));
  Page3Options opt;
  opt.enumeration_limit = static_cast<std::size_t>(param_int(d, "enumeration_limit", 1000000));
  if (d.params.contains("l")) {
    ExtendResult r = extend_once(s, param_int(d, "l", 0), h, opt);
    res.results = {{"mode", "once"}, {"ok", r.ok}, {"l", r.l}};
    if (r.ok)
      res.results["structure"] = io::structure_json(*r.structure);
    else
      res.results["failure"] = obstruction_json(h, r.report);
    res.exit_code = r.ok ? 0 : failure_code(r.report);
    res.text << "extend A_" << s.k() << " at l = " << r.l << ": " << (r.ok ? "ok" : "failed") << "\n";
    return;
  }
  const int target = param_int(d, "target", s.k() + 1);
  if (target < s.k()) throw ConfigError("$.params.target: below the current k");
  ExtendTrace t = extend_to(s, target, h, opt);
  Json steps = Json::array();
  for (const auto& st : t.steps) {
    steps.push_back({{"from_k", st.from_k}, {"l", st.l}, {"ok", st.ok}});
    res.text << "A_" << st.from_k << " -> A_" << st.from_k + 1 << " at l = " << st.l << ": "
             << (st.ok ? "ok" : "failed") << "\n";
  }
  res.results = {{"mode", "to"}, {"target", target}, {"ok", t.ok}, {"steps", steps},
                 {"reached_k", t.last.k()}, {"structure", io::structure_json(t.last)}};
  if (t.failure) res.results["failure"] = obstruction_json(h, *t.failure);
  res.exit_code = t.ok ? 0 : t.failure ? failure_code(*t.failure) : 2;
}

void cmd_collapse(const io::InputDocument& d, Result& res) {
  const AInfStructure& s = need_structure(d, 5);
  const auto s_range = param_range(d, "s_range", {0, 5}), t_range = param_range(d, "t_range", {-2, 5});
  Cohomology h(s.algebra(), complex_of(d));
  SpectralSequence ss(h, s);
  CollapseReport rep = ss.collapse_check(s_range, t_range);
  Json cup = Json::array(), e3 = Json::array();
  for (const auto& c : rep.cup.cells)
    cup.push_back({{"bidegree", pair_json(c.p, c.q)},
                   {"source_dim", c.source_dim},
                   {"target_dim", c.target_dim},
                   {"rank", c.rank},
                   {"verdict", to_string(c.verdict)}});
  for (const auto& c : rep.e3_cells) e3.push_back({{"s", c.s}, {"t", c.t}, {"dim", c.dim}, {"note", c.note}});
  res.results = {{"ok", rep.ok()},
                 {"sq_vanishes", rep.sq_vanishes},
                 {"cup_bijective", rep.cup_bijective},
                 {"cup_cells", cup},
                 {"e3_checked", rep.e3_checked},
                 {"e3_vanishes", rep.e3_vanishes},
                 {"e3_cells", e3}};
  res.exit_code = rep.ok() ? 0 : 2;
  res.text << "Sq({m3}) = 0: " << (rep.sq_vanishes ? "yes" : "no") << "\n"
           << "{m3} cup - bijective: " << (rep.cup_bijective ? "yes" : "no") << "\n"
           << "E3 vanishes for s >= 2: " << (!rep.e3_checked ? "not checked" : rep.e3_vanishes ? "yes" : "no")
           << "\n";
}

void cmd_section8(const io::InputDocument& d, const Flags& f, Result& res) {
  int ch = 5;
  if (d.field) ch = static_cast<int>(d.field->characteristic());
  ch = f.characteristic.value_or(ch);
  const int D = f.max_poly_degree.value_or(param_int(d, "max_poly_degree", 3));
  if (D < 0) throw ConfigError("--max-poly-degree must be non-negative");
  Section8Options opt;
  opt.seed = f.seed;
  opt.samples = param_int(d, "samples", opt.samples);
  Section8Report rep = section8_report(ch, D, opt);
  Json checks = Json::array();
  bool exact_failure = false, inconclusive = false;
  for (const auto& c : rep.checks) {
    checks.push_back({{"id", c.id},
                      {"name", c.name},
                      {"ok", c.ok()},
                      {"instances", c.instances},
                      {"passed", c.passed},
                      {"inconclusive", c.inconclusive},
                      {"failures", c.failures}});
    const bool exact = c.instances - c.passed > c.inconclusive;
    res.text << (c.ok() ? "PASS" : exact ? "FAIL" : "UNDECIDED") << " (" << c.id << ") " << c.name << " [" << c.passed << "/"
             << c.instances << "]\n";
    exact_failure = exact_failure || exact;
    inconclusive = inconclusive || c.inconclusive > 0;
    for (const auto& s : c.failures) res.text << "  " << s << "\n";
  }
  res.results = {{"characteristic", ch}, {"max_poly_degree", D}, {"ok", rep.ok()}, {"checks", checks}};
  res.exit_code = exact_failure ? 2 : inconclusive ? 3 : 0;
}

}  // namespace

Outcome run(const std::string& command, const std::string& document, const Flags& flags) {
  Outcome out;
  Json echo = Json::object();
  if (flags.trials) echo["trials"] = *flags.trials;
  if (flags.page) echo["page"] = *flags.page;
  if (flags.characteristic) echo["char"] = *flags.characteristic;
  if (flags.max_poly_degree) echo["max_poly_degree"] = *flags.max_poly_degree;
  out.report = {{"command", command}, {"flags", echo}, {"seed", flags.seed}};
  if (flags.threads > 0) omp_set_num_threads(flags.threads);
  const auto start = std::chrono::steady_clock::now();
  Result res;
  auto error = [&](const char* kind, const std::exception& e) {
    out.report["error"] = {{"kind", kind}, {"message", e.what()}};
    res.exit_code = 1;
    res.text << "error: " << e.what() << "\n";
  };
  try {
    const auto& names = commands();
    if (std::find(names.begin(), names.end(), command) == names.end())
      throw ConfigError("unknown command \"" + command + "\"");
    io::InputDocument d = io::parse_input(document);
    if (command == "validate") cmd_validate(d, res);
    if (command == "hh") cmd_hh(d, res);
    if (command == "props") cmd_props(d, flags, res);
    if (command == "e-page") cmd_epage(d, flags, res);
    if (command == "obstruct") cmd_obstruct(d, flags, res);
    if (command == "extend") cmd_extend(d, res);
    if (command == "collapse-check") cmd_collapse(d, res);
    if (command == "section8") cmd_section8(d, flags, res);
    out.report["results"] = std::move(res.results);
  } catch (const ConfigError& e) {
    error("input", e);
  } catch (const ValidationError& e) {
    error("validation", e);
  } catch (const DomainError& e) {
    error("domain", e);
  } catch (const UnsupportedError& e) {
    error("unsupported", e);
  } catch (const UndefinedCell& e) {
    error("undefined", e);
  } catch (const Json::exception& e) {
    error("input", e);
  }
  out.report["exit_code"] = res.exit_code;
  if (flags.timing)
    out.report["timing"] = {
        {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  out.exit_code = res.exit_code;
  out.text = res.text.str();
  return out;
}

}  // namespace hoch::cli
