#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sehgalkit/cache.hpp"
#include "sehgalkit/construct.hpp"
#include "sehgalkit/help.hpp"
#include "sehgalkit/jsonio.hpp"

namespace {

using namespace sehgalkit;

struct Options {
  std::string output = "pretty";
  int threads = 1;
  std::string cache_dir;
  i64 qmax = 19;
  bool allow_large = false;
  bool oracle = false;
};

void check_scope(const AbelianGroup& A, const Options& opt) {
  for (const auto& c : A.components) {
    if (c.exponents.size() < 2 || c.prime <= opt.qmax) continue;
    if (!opt.allow_large)
      throw scope_error("prime " + std::to_string(c.prime) + " exceeds --qmax " +
                        std::to_string(opt.qmax) +
                        "; pass --allow-large to proceed (enumeration cost grows steeply)");
    std::cerr << "warning: prime " << c.prime
              << " is beyond the default scope; enumeration may take very long\n";
  }
}

std::vector<i64> parse_csv_ints(const std::string& text) {
  std::vector<i64> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    size_t pos = 0;
    out.push_back(std::stoll(item, &pos));
    if (pos != item.size()) throw std::invalid_argument("malformed integer list: " + text);
  }
  return out;
}

std::vector<std::pair<i64, i64>> parse_pairs(const std::string& text) {
  // "(a,b),(c,d),..." with integer entries
  std::vector<std::pair<i64, i64>> out;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("malformed pair list: " + text);
    size_t close = text.find(')', i);
    if (close == std::string::npos) throw std::invalid_argument("malformed pair list: " + text);
    std::vector<i64> nums = parse_csv_ints(text.substr(i + 1, close - i - 1));
    if (nums.size() != 2) throw std::invalid_argument("malformed pair list: " + text);
    out.emplace_back(nums[0], nums[1]);
    i = close + 1;
    if (i < text.size()) {
      if (text[i] != ',') throw std::invalid_argument("malformed pair list: " + text);
      ++i;
    }
  }
  if (out.empty()) throw std::invalid_argument("empty pair list: " + text);
  return out;
}

std::vector<std::vector<i64>> identity_blocks(const AbelianGroup& A) {
  std::vector<std::vector<i64>> blocks;
  for (const auto& c : A.components) {
    const size_t r = c.exponents.size();
    std::vector<i64> b(r * r, 0);
    for (size_t i = 0; i < r; ++i) b[i * r + i] = 1;
    blocks.push_back(std::move(b));
  }
  return blocks;
}

// Action specs: "singer:<m>@<p>", "diag:(a,b),(c,d)@<p>", "gl@<p>" place a
// matrix group on the C_p x C_p component (identity elsewhere); "file:<path>"
// reads {"generators": [[block,...], ...]} with one block per component.
AutGroup parse_gamma(const AbelianGroup& N, const std::vector<std::string>& specs) {
  std::vector<AutElem> gens;
  std::string label;
  for (const std::string& spec : specs) {
    if (!label.empty()) label += " ";
    label += spec;
    if (spec.rfind("file:", 0) == 0) {
      std::ifstream in(spec.substr(5));
      if (!in) throw std::invalid_argument("cannot open action file: " + spec.substr(5));
      const Json doc = Json::parse(in, nullptr, false);
      if (doc.is_discarded() || !doc.contains("generators") || !doc["generators"].is_array())
        throw std::invalid_argument("action file needs a \"generators\" array: " + spec.substr(5));
      for (const auto& g : doc["generators"])
        gens.push_back(make_aut(N, g.get<std::vector<std::vector<i64>>>()));
      continue;
    }
    const size_t at = spec.rfind('@');
    if (at == std::string::npos)
      throw std::invalid_argument("action spec needs '@<prime>': " + spec);
    const i64 p = std::stoll(spec.substr(at + 1));
    const std::string head = spec.substr(0, at);
    size_t ci = N.components.size();
    for (size_t i = 0; i < N.components.size(); ++i)
      if (N.components[i].prime == p) ci = i;
    if (ci == N.components.size() || N.components[ci].exponents != std::vector<int>{1, 1})
      throw std::invalid_argument("the group has no C_" + std::to_string(p) + " x C_" +
                                  std::to_string(p) + " component for action spec '" + spec + "'");
    std::vector<std::vector<i64>> mats;
    if (head.rfind("singer:", 0) == 0) {
      mats = singer_subgroup(p, std::stoll(head.substr(7))).generators;
    } else if (head.rfind("diag:", 0) == 0) {
      mats = diagonal_subgroup(p, parse_pairs(head.substr(5))).generators;
    } else if (head == "gl") {
      const i64 z = primitive_root(p);
      mats = {{z, 0, 0, 1}, {p - 1, 1, p - 1, 0}, {1, 1, 0, 1}};
    } else {
      throw std::invalid_argument("unknown action spec '" + spec +
                                  "' (use singer:<m>@<p>, diag:(a,b),...@<p>, gl@<p>, file:<path>)");
    }
    for (const auto& m : mats) {
      auto blocks = identity_blocks(N);
      blocks[ci] = m;
      gens.push_back(make_aut(N, blocks));
    }
  }
  if (gens.empty()) throw std::invalid_argument("no action generators given (pass --gamma)");
  return generate(N, gens, label);
}

void emit(const Options& opt, const Json& j, const std::string& tsv, const std::string& pretty) {
  if (opt.output == "json")
    std::cout << dump_json(j);
  else if (opt.output == "tsv")
    std::cout << tsv;
  else
    std::cout << pretty;
}

std::string tuple_text(const std::vector<i64>& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

std::string witness_text(const Witness& w) {
  std::string s;
  for (size_t i = 0; i < w.epsilon.class_reps.size(); ++i) {
    if (w.epsilon.class_values[i] == 0) continue;
    if (!s.empty()) s += ", ";
    s += "eps" + tuple_text(w.epsilon.class_reps[i]) + "=" +
         std::to_string(w.epsilon.class_values[i]);
  }
  return s.empty() ? "(zero)" : s;
}

int run_eset(const std::string& kernel_spec, const std::string& mode_name, const Options& opt) {
  const size_t at = kernel_spec.rfind('@');
  if (at == std::string::npos)
    throw std::invalid_argument("kernel spec needs '@<prime>': " + kernel_spec);
  const i64 q = std::stoll(kernel_spec.substr(at + 1));
  const AbelianGroup A = make_group({{q, {1, 1}}});
  check_scope(A, opt);
  const AutGroup gamma = parse_gamma(A, {kernel_spec});
  const WeightMode mode = mode_name == "inner" ? WeightMode::inner : WeightMode::count;

  const i64 z = primitive_root(q);
  const AutGroup S = generate(
      A, {make_aut(A, {{z, 0, 0, 1}}), make_aut(A, {{q - 1, 1, q - 1, 0}}), make_aut(A, {{1, 1, 0, 1}})},
      "GL(2," + std::to_string(q) + ")");
  std::vector<i64> nonzero;
  for (i64 i = 1; i < A.order; ++i) nonzero.push_back(i);
  EConstraintSystem sys = build_system(S, gamma, A, nonzero, mode);
  apply_pruning(sys, gamma);
  const std::vector<ESolution> sols =
      opt.oracle ? brute_force_solutions(sys) : enumerate_solutions(sys);

  Json j{{"input", Json{{"command", "eset"},
                        {"kernel", kernel_spec},
                        {"mode", mode_name},
                        {"oracle", opt.oracle}}},
         {"system", system_json(sys)}};
  Json sj = Json::array();
  for (const auto& s : sols) sj.push_back(solution_json(s));
  j["solutions"] = sj;

  std::ostringstream pretty;
  pretty << system_text(sys) << "solutions: " << sols.size() << "\n";
  for (const auto& s : sols) pretty << "  " << tuple_text(s.tuple) << "\n";
  emit(opt, j, solutions_tsv(sols), pretty.str());
  return 0;
}

int run_alg1(const std::string& group_spec_text, i64 p, const std::vector<std::string>& gammas,
             const Options& opt) {
  const AbelianGroup N = parse_group(group_spec_text);
  check_scope(N, opt);
  const AutGroup gamma = parse_gamma(N, gammas);
  const MetabelianGroup G = make_metabelian(N, gamma, group_spec_text + " : " + gamma.label);
  const AlgOutcome out = algorithm1(G, p, opt.threads);

  Json j{{"input", Json{{"command", "alg1"}, {"group", group_spec_text}, {"p", p},
                        {"gamma", gammas}}}};
  const Json body = outcome_json(out);
  for (const auto& [k, v] : body.items()) j[k] = v;

  std::ostringstream pretty, tsv;
  pretty << "verdict for p=" << p << ": " << (out.verdict_true ? "true" : "false") << " ("
         << out.witnesses.size() << " witness distribution(s))\n";
  for (const auto& w : out.witnesses) pretty << "  " << witness_text(w) << "\n";
  tsv << "verdict_true\t" << (out.verdict_true ? "true" : "false") << "\nwitnesses\t"
      << out.witnesses.size() << "\n";
  emit(opt, j, tsv.str(), pretty.str());
  return 0;
}

int run_alg2(const std::string& group_spec_text, const std::vector<std::string>& gammas,
             const Options& opt) {
  const AbelianGroup N = parse_group(group_spec_text);
  check_scope(N, opt);
  const AutGroup gamma = parse_gamma(N, gammas);
  const MetabelianGroup G = make_metabelian(N, gamma, group_spec_text + " : " + gamma.label);
  const AlgOutcome out = algorithm2(G, opt.threads);

  Json j{{"input", Json{{"command", "alg2"}, {"group", group_spec_text}, {"gamma", gammas}}}};
  const Json body = outcome_json(out);
  for (const auto& [k, v] : body.items()) j[k] = v;

  std::ostringstream pretty, tsv;
  pretty << "verdict: " << (out.verdict_true ? "true" : "false") << " (" << out.witnesses.size()
         << " witness distribution(s))\n";
  for (const auto& w : out.witnesses) pretty << "  " << witness_text(w) << "\n";
  tsv << "verdict_true\t" << (out.verdict_true ? "true" : "false") << "\nwitnesses\t"
      << out.witnesses.size() << "\n";
  emit(opt, j, tsv.str(), pretty.str());
  return 0;
}

int run_alg3(const std::string& group_spec_text, const std::string& mode_name, const Options& opt) {
  const AbelianGroup A = parse_group(group_spec_text);
  check_scope(A, opt);
  const WeightMode mode = mode_name == "inner" ? WeightMode::inner : WeightMode::count;
  Alg3Outcome out;
  if (opt.oracle) {
    ESetHooks hooks;
    hooks.load = [](const Gl2Subgroup&, const EConstraintSystem& sys) {
      return std::optional<std::vector<ESolution>>(brute_force_solutions(sys));
    };
    out = algorithm3(A, mode, opt.threads, &hooks);
  } else {
    out = cached_algorithm3(A, mode, opt.threads, resolve_cache_dir(opt.cache_dir));
  }

  Json j{{"input", Json{{"command", "alg3"}, {"group", group_spec_text}, {"mode", mode_name},
                        {"oracle", opt.oracle}}}};
  const Json body = alg3_json(out);
  for (const auto& [k, v] : body.items()) j[k] = v;

  std::ostringstream pretty, tsv;
  pretty << "verdict: " << (out.verdict_true ? "true" : "false")
         << (out.exhaustive ? " (exhaustive scan)" : " (abelian kernels only)") << "\n"
         << "core: " << group_name(out.core) << "\n";
  tsv << "kernel\ttype\ttuple\n";
  for (const auto& e : out.entries) {
    pretty << "  kernel " << iso_label(e.K.group) << " (order " << e.K.order() << "): "
           << e.solutions.size() << " solution(s)\n";
    for (const auto& s : e.solutions) {
      pretty << "    " << tuple_text(s.tuple) << "\n";
      tsv << e.K.label << '\t' << iso_label(e.K.group) << '\t';
      for (size_t i = 0; i < s.tuple.size(); ++i) tsv << (i ? "," : "") << s.tuple[i];
      tsv << '\n';
    }
  }
  emit(opt, j, tsv.str(), pretty.str());
  return 0;
}

int run_tables(const Options& opt) {
  const std::vector<TableRow> rows =
      tables(opt.qmax, opt.threads, resolve_cache_dir(opt.cache_dir));
  Json j{{"input", Json{{"command", "tables"}, {"qmax", opt.qmax}}}};
  Json rj = Json::array();
  for (const auto& r : rows) rj.push_back(table_row_json(r));
  j["rows"] = rj;

  std::ostringstream pretty;
  for (const auto& r : rows) {
    pretty << "p=" << r.p << "  " << (r.diagonal ? "diagonal" : "singer") << "  K="
           << iso_label(r.K.group) << " (order " << r.K.order() << ")  quotient C"
           << r.quotient_order << "  tuples:";
    for (const auto& t : r.tuples) pretty << " " << tuple_text(t);
    pretty << "\n";
  }
  emit(opt, j, tables_tsv(rows), pretty.str());
  return 0;
}

int run_gl5(const Options& opt) {
  bool ok = true;
  Json scans = Json::array();
  std::ostringstream pretty;
  for (i64 q : {2, 3, 5}) {
    const Alg3Outcome out = algorithm3(make_group({{q, {1, 1}}}), WeightMode::count, opt.threads);
    const bool good = out.verdict_true && out.exhaustive && out.entries.empty();
    ok = ok && good;
    scans.push_back(Json{{"q", q}, {"verdict_true", out.verdict_true},
                         {"exhaustive", out.exhaustive}});
    pretty << "C" << q << "xC" << q << " exhaustive scan: "
           << (good ? "verdict true" : "FAILED") << "\n";
  }

  const std::vector<Gl2Subgroup> kernels = residual_kernels(5);
  ok = ok && kernels.size() == 7;
  pretty << "residual kernel classes at q=5: " << kernels.size() << " (expected 7)\n";

  const AbelianGroup A = make_group({{5, {1, 1}}});
  const i64 z = primitive_root(5);
  const AutGroup S = generate(
      A, {make_aut(A, {{z, 0, 0, 1}}), make_aut(A, {{4, 1, 4, 0}}), make_aut(A, {{1, 1, 0, 1}})},
      "GL(2,5)");
  std::vector<i64> nonzero;
  for (i64 i = 1; i < A.order; ++i) nonzero.push_back(i);

  Json kj = Json::array();
  for (const auto& K : kernels) {
    bool empty_both = true;
    for (WeightMode mode : {WeightMode::count, WeightMode::inner}) {
      EConstraintSystem sys = build_system(S, K.group, A, nonzero, mode);
      apply_pruning(sys, K.group);
      empty_both = empty_both && enumerate_solutions(sys).empty();
    }
    ok = ok && empty_both;
    kj.push_back(Json{{"type", iso_label(K.group)}, {"order", K.order()},
                      {"only_trivial", empty_both}});
    pretty << "  E(" << iso_label(K.group) << "): "
           << (empty_both ? "only trivial solutions" : "FAILED") << "\n";
  }
  pretty << (ok ? "pass\n" : "FAIL\n");

  const Json j{{"input", Json{{"command", "gl5-check"}}},
               {"scans", scans},
               {"kernels", kj},
               {"pass", ok}};
  std::ostringstream tsv;
  tsv << "check\tresult\n";
  for (const auto& K : kernels) tsv << "E(" << iso_label(K.group) << ")\tempty\n";
  emit(opt, j, tsv.str(), pretty.str());
  return ok ? 0 : 2;
}

int run_help_check(i64 p, i64 q, i64 d, const std::string& tuple_text_in, const Options& opt) {
  const GdGroup G = make_gd_group(p, q, d);
  const HelpSystem sys = help_system(G, opt.threads);
  const std::vector<std::vector<i64>> sols = help_solutions(sys);

  Json j{{"input", Json{{"command", "help-check"}, {"p", p}, {"q", q}, {"d", d}}},
         {"system", help_system_json(sys)},
         {"solutions", sols}};

  std::ostringstream pretty;
  pretty << "multiplicity system for (p,q,d)=(" << p << "," << q << "," << d << "): "
         << sys.rows.size() << " rows, " << d << " variables\n"
         << "tuples passing the method: " << sols.size() << "\n";
  for (const auto& s : sols) pretty << "  " << tuple_text(s) << "\n";

  if (!tuple_text_in.empty()) {
    const std::vector<i64> t = parse_csv_ints(tuple_text_in);
    if (static_cast<i64>(t.size()) != d)
      throw std::invalid_argument("--tuple needs exactly " + std::to_string(d) + " entries");
    bool feasible = std::accumulate(t.begin(), t.end(), i64{0}) == 1;
    i64 violations = 0;
    for (const auto& row : sys.rows) {
      i64 v = 0;
      for (size_t i = 0; i < row.size(); ++i) v += row[i] * t[i];
      if (v < 0) ++violations;
    }
    feasible = feasible && violations == 0;
    j["tuple_check"] = Json{{"tuple", t}, {"feasible", feasible}, {"violated_rows", violations}};
    pretty << "tuple " << tuple_text(t) << ": "
           << (feasible ? "passes all rows" : "rejected") << "\n";
  }
  emit(opt, j, help_tsv(sys), pretty.str());
  return 0;
}

int run_construct(i64 p, i64 q, bool all_pairs, bool verify, const Options& opt) {
  const AbelianGroup Ap = make_group({{p, {1, 1}}});
  const AbelianGroup Aq = make_group({{q, {1, 1}}});
  check_scope(Ap, opt);
  check_scope(Aq, opt);
  const std::string dir = resolve_cache_dir(opt.cache_dir);
  const Alg3Outcome out_p = cached_algorithm3(Ap, WeightMode::count, opt.threads, dir);
  const Alg3Outcome out_q = cached_algorithm3(Aq, WeightMode::count, opt.threads, dir);
  const MatchReport rep = match_pairs(p, out_p, q, out_q, opt.threads);

  Json j{{"input", Json{{"command", "construct"}, {"p", p}, {"q", q}, {"all_pairs", all_pairs},
                        {"verify", verify}}},
         {"pairs", match_report_json(rep)}};

  std::ostringstream pretty;
  pretty << "matched pairs for (" << p << "," << q << "): " << rep.pairs.size() << "\n";
  for (const std::string& note : rep.notes) pretty << "  note: " << note << "\n";

  const size_t limit = all_pairs ? rep.pairs.size() : std::min<size_t>(1, rep.pairs.size());
  bool all_pass = true;
  Json cands = Json::array();
  for (size_t i = 0; i < limit; ++i) {
    const CandidateGroup cand = build_candidate(rep.pairs[i]);
    Json cj = candidate_json(cand);
    pretty << "candidate " << (i + 1) << ": kernels " << iso_label(cand.pair.Kp.group) << " / "
           << iso_label(cand.pair.Kq.group) << ", action order " << cand.gamma.order();
    if (cand.has_gd_type) pretty << ", full Singer pair with d=" << cand.gd_d;
    pretty << "\n";
    if (verify) {
      const VerifyReport vr = verify_candidate(cand, opt.threads);
      all_pass = all_pass && vr.pass;
      cj["verify"] = verify_report_json(vr);
      pretty << "  verification: " << (vr.pass ? "pass" : "FAIL") << " (" << vr.witness_count
             << " witness distribution(s))\n";
    }
    cands.push_back(std::move(cj));
  }
  j["candidates"] = cands;

  std::ostringstream tsv;
  tsv << "p\tq\tkernel_p\tkernel_q\tquotient\tglue_exponent\n";
  for (const auto& mp : rep.pairs)
    tsv << mp.p << '\t' << mp.q << '\t' << iso_label(mp.Kp.group) << '\t'
        << iso_label(mp.Kq.group) << '\t' << mp.r << '\t' << mp.u << '\n';
  emit(opt, j, tsv.str(), pretty.str());
  return verify && !all_pass ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constraint sets, scans, tables, and candidate construction for torsion units "
               "of integral group rings of metabelian groups"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--output", opt.output, "Output format")->check(CLI::IsMember({"json", "tsv", "pretty"}));
  app.add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", opt.cache_dir, "Solution cache directory (SEHGALKIT_CACHE as fallback)");
  app.add_option("--qmax", opt.qmax, "Largest admissible prime with a square component");
  app.add_flag("--allow-large", opt.allow_large, "Proceed past --qmax with a warning");
  app.add_flag("--oracle", opt.oracle, "Force the brute-force box scan instead of branch-and-prune");

  std::string kernel_spec, mode_name = "count", group_text, tuple_text_in;
  std::vector<std::string> gammas;
  i64 p_flag = 0, q_flag = 0, d_flag = 1;
  bool all_pairs = false, verify = false;

  CLI::App* eset = app.add_subcommand("eset", "Constraint system and solutions for one kernel");
  eset->add_option("--kernel", kernel_spec, "singer:<m>@<q> or diag:(a,b),...@<q>")->required();
  eset->add_option("--mode", mode_name, "Row weighting")->check(CLI::IsMember({"inner", "count"}));

  CLI::App* alg1 = app.add_subcommand("alg1", "Single-prime verification pass");
  alg1->add_option("--group", group_text, "Normal subgroup, e.g. 7^[1,1]x13^[1,1]")->required();
  alg1->add_option("--p", p_flag, "Prime of the pass")->required();
  alg1->add_option("--gamma", gammas, "Action generators (repeatable)")->required();

  CLI::App* alg2 = app.add_subcommand("alg2", "All-primes verification");
  alg2->add_option("--group", group_text, "Normal subgroup spec")->required();
  alg2->add_option("--gamma", gammas, "Action generators (repeatable)")->required();

  CLI::App* alg3 = app.add_subcommand("alg3", "Group-independent kernel scan");
  alg3->add_option("--group", group_text, "Abelian group spec")->required();
  alg3->add_option("--mode", mode_name, "Row weighting")->check(CLI::IsMember({"inner", "count"}));

  CLI::App* tab = app.add_subcommand("tables", "Translate-form solution tables for p <= qmax");

  CLI::App* gl5 = app.add_subcommand("gl5-check", "Exhaustive small-prime verification (q = 2, 3, 5)");

  CLI::App* hc = app.add_subcommand("help-check", "Character-multiplicity method for the metabelian family");
  hc->add_option("--p", p_flag, "First prime")->required();
  hc->add_option("--q", q_flag, "Second prime")->required();
  hc->add_option("--d", d_flag, "Common divisor parameter")->required();
  hc->add_option("--tuple", tuple_text_in, "Candidate tuple x0,x1,... to test");

  CLI::App* con = app.add_subcommand("construct", "Glue two one-prime kernels into a candidate group");
  con->add_option("--p", p_flag, "Smaller prime")->required();
  con->add_option("--q", q_flag, "Larger prime")->required();
  con->add_flag("--all-pairs", all_pairs, "Build every matched pair, not only the first");
  con->add_flag("--verify", verify, "Re-run the verification algorithms on each candidate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (eset->parsed()) return run_eset(kernel_spec, mode_name, opt);
    if (alg1->parsed()) return run_alg1(group_text, p_flag, gammas, opt);
    if (alg2->parsed()) return run_alg2(group_text, gammas, opt);
    if (alg3->parsed()) return run_alg3(group_text, mode_name, opt);
    if (tab->parsed()) return run_tables(opt);
    if (gl5->parsed()) return run_gl5(opt);
    if (hc->parsed()) return run_help_check(p_flag, q_flag, d_flag, tuple_text_in, opt);
    if (con->parsed()) return run_construct(p_flag, q_flag, all_pairs, verify, opt);
  } catch (const scope_error& e) {
    std::cerr << "scope error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal verification failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
