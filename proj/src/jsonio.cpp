#include "sehgalkit/jsonio.hpp"

#include <sstream>

namespace sehgalkit {

namespace {

Json blocks_json(const AutElem& s) {
  Json out = Json::array();
  for (const auto& b : s.blocks) out.push_back(b);
  return out;
}

std::string join_tuple(const std::vector<i64>& t, char sep) {
  std::ostringstream os;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) os << sep;
    os << t[i];
  }
  return os.str();
}

}  // namespace

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json group_json(const AbelianGroup& A) {
  Json comps = Json::array();
  for (const auto& c : A.components) comps.push_back(Json::array({c.prime, c.exponents}));
  return Json{{"spec", group_spec(A)}, {"name", group_name(A)}, {"order", A.order},
              {"components", comps}};
}

Json class_function_json(const ClassFunction& f) {
  Json classes = Json::array();
  for (size_t i = 0; i < f.class_reps.size(); ++i)
    classes.push_back(Json{{"rep", f.class_reps[i]}, {"value", f.class_values[i]}});
  return Json{{"acting", f.acting_label}, {"classes", classes}};
}

Json solution_json(const ESolution& s) {
  return Json{{"tuple", s.tuple}, {"canonical", s.canonical_tuple}};
}

Json subgroup_json(const Gl2Subgroup& K) {
  Json gens = Json::array();
  for (const auto& g : K.generators) gens.push_back(g);
  return Json{{"label", K.label},         {"type", iso_label(K.group)},
              {"kind", kind_name(K.kind)}, {"q", K.q},
              {"order", K.order()},        {"generators", gens}};
}

Json aut_group_json(const AutGroup& H) {
  Json gens = Json::array();
  for (const auto& s : H.generators) gens.push_back(blocks_json(s));
  return Json{{"label", H.label}, {"order", H.order()}, {"generators", gens}};
}

Json system_json(const EConstraintSystem& sys) {
  Json vars = Json::array();
  for (size_t i = 0; i < sys.vars.size(); ++i)
    vars.push_back(Json{{"rep", sys.vars[i].rep},
                        {"class_size", static_cast<i64>(sys.vars[i].members.size())},
                        {"inner_order", sys.inner_orders[i]},
                        {"lower_bound", sys.lower_bounds[i]}});
  return Json{{"group", group_json(sys.A)},
              {"acting", sys.acting_label},
              {"mode", sys.mode == WeightMode::inner ? "inner" : "count"},
              {"local_class_size", static_cast<i64>(sys.local_cls.size())},
              {"variables", vars},
              {"cone_rows", sys.cone_rows},
              {"require_negative", sys.require_negative},
              {"provably_empty", sys.provably_empty},
              {"empty_note", sys.empty_note}};
}

Json alg3_entry_json(const Alg3Entry& e) {
  Json sols = Json::array();
  for (const auto& s : e.solutions) sols.push_back(solution_json(s));
  return Json{{"kernel", subgroup_json(e.K)}, {"system", system_json(e.system)},
              {"solutions", sols}};
}

Json alg3_json(const Alg3Outcome& out) {
  Json entries = Json::array();
  for (const auto& e : out.entries) entries.push_back(alg3_entry_json(e));
  return Json{{"verdict_true", out.verdict_true},
              {"exhaustive", out.exhaustive},
              {"core", group_json(out.core)},
              {"entries", entries}};
}

Json outcome_json(const AlgOutcome& out) {
  Json ws = Json::array();
  for (const auto& w : out.witnesses) {
    Json origins = Json::array();
    for (const auto& o : w.origins)
      origins.push_back(Json{{"p", o.p}, {"y", o.y}, {"inner", o.inner_label},
                             {"f", class_function_json(o.f)}});
    ws.push_back(Json{{"epsilon", class_function_json(w.epsilon)}, {"origins", origins}});
  }
  return Json{{"verdict_true", out.verdict_true}, {"witnesses", ws}};
}

Json table_row_json(const TableRow& row) {
  return Json{{"p", row.p},
              {"form", row.diagonal ? "diagonal" : "singer"},
              {"kernel", subgroup_json(row.K)},
              {"quotient_order", row.quotient_order},
              {"quotient_cyclic", row.quotient_cyclic},
              {"off_axis_only", row.off_axis_only},
              {"tuples", row.tuples}};
}

Json matched_pair_json(const MatchedPair& mp) {
  return Json{{"p", mp.p},
              {"q", mp.q},
              {"kernel_p", subgroup_json(mp.Kp)},
              {"kernel_q", subgroup_json(mp.Kq)},
              {"overgroup_p", subgroup_json(mp.Tp)},
              {"overgroup_q", subgroup_json(mp.Tq)},
              {"generator_p", mp.cp},
              {"generator_q", mp.cq},
              {"quotient_order", mp.r},
              {"glue_exponent", mp.u},
              {"base_point", mp.n},
              {"values_p", mp.svals},
              {"values_q", mp.tvals},
              {"key", mp.key}};
}

Json match_report_json(const MatchReport& rep) {
  Json pairs = Json::array();
  for (const auto& mp : rep.pairs) pairs.push_back(matched_pair_json(mp));
  return Json{{"pairs", pairs}, {"notes", rep.notes}};
}

Json candidate_json(const CandidateGroup& c) {
  Json gd;
  if (c.has_gd_type) gd = Json{{"d", c.gd_d}, {"p", c.pair.p}, {"q", c.pair.q}};
  return Json{{"core", group_json(c.N)},
              {"action", aut_group_json(c.gamma)},
              {"epsilon", class_function_json(c.epsilon)},
              {"gd_type", gd},
              {"pair", matched_pair_json(c.pair)}};
}

Json verify_report_json(const VerifyReport& r) {
  return Json{{"pass", r.pass},
              {"centralizer_collapse_p", r.centralizer_collapse_p},
              {"centralizer_collapse_q", r.centralizer_collapse_q},
              {"inner_is_kp", r.inner_is_kp},
              {"inner_is_kq", r.inner_is_kq},
              {"symmetric_formula", r.symmetric_formula},
              {"membership_p", r.membership_p},
              {"membership_q", r.membership_q},
              {"epsilon_among_witnesses", r.epsilon_among_witnesses},
              {"witness_count", r.witness_count}};
}

Json help_system_json(const HelpSystem& sys) {
  return Json{{"p", sys.p}, {"q", sys.q}, {"d", sys.d},
              {"row_count", static_cast<i64>(sys.rows.size())}, {"rows", sys.rows}};
}

std::string tables_tsv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "p\tform\tkernel\tkernel_order\tquotient_order\ttuples\n";
  for (const auto& row : rows) {
    os << row.p << '\t' << (row.diagonal ? "diagonal" : "singer") << '\t'
       << iso_label(row.K.group) << '\t' << row.K.order() << '\t' << row.quotient_order << '\t';
    for (size_t i = 0; i < row.tuples.size(); ++i) {
      if (i) os << ';';
      os << join_tuple(row.tuples[i], ',');
    }
    os << '\n';
  }
  return os.str();
}

std::string help_tsv(const HelpSystem& sys) {
  std::ostringstream os;
  os << "r\ts";
  for (i64 i = 0; i < sys.d; ++i) os << "\tmu_" << i;
  os << '\n';
  size_t idx = 0;
  for (i64 r = 0; r < sys.p; ++r)
    for (i64 s = 0; s < sys.q; ++s, ++idx) {
      os << r << '\t' << s;
      for (i64 v : sys.rows[idx]) os << '\t' << v;
      os << '\n';
    }
  return os.str();
}

std::string solutions_tsv(const std::vector<ESolution>& sols) {
  std::ostringstream os;
  for (const auto& s : sols) os << join_tuple(s.tuple, '\t') << '\n';
  return os.str();
}

}  // namespace sehgalkit
