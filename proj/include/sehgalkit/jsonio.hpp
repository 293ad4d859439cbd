#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sehgalkit/algorithms.hpp"
#include "sehgalkit/construct.hpp"
#include "sehgalkit/esystem.hpp"
#include "sehgalkit/gl2.hpp"
#include "sehgalkit/help.hpp"

namespace sehgalkit {

// Insertion order is preserved and controlled by the emitters, so dumps are
// deterministic for a fixed input.
using Json = nlohmann::ordered_json;

// Canonical textual form used everywhere a JSON document leaves the program:
// two-space indentation and a trailing newline, byte-identical across runs.
std::string dump_json(const Json& j);

Json group_json(const AbelianGroup& A);
Json class_function_json(const ClassFunction& f);
Json solution_json(const ESolution& s);
Json subgroup_json(const Gl2Subgroup& K);
Json aut_group_json(const AutGroup& H);
Json system_json(const EConstraintSystem& sys);
Json alg3_entry_json(const Alg3Entry& e);
Json alg3_json(const Alg3Outcome& out);
Json outcome_json(const AlgOutcome& out);
Json table_row_json(const TableRow& row);
Json matched_pair_json(const MatchedPair& mp);
Json match_report_json(const MatchReport& rep);
Json candidate_json(const CandidateGroup& c);
Json verify_report_json(const VerifyReport& r);
Json help_system_json(const HelpSystem& sys);

// Tab-separated table of translation rows: one line per (kernel, quotient)
// with the value tuples joined by ';'. Layout documented in the README.
std::string tables_tsv(const std::vector<TableRow>& rows);

// Tab-separated multiplicity table: header r, s, mu_0..mu_{d-1}, one line per
// eigenvalue index in r-major order.
std::string help_tsv(const HelpSystem& sys);

// One value tuple per line, entries tab-separated.
std::string solutions_tsv(const std::vector<ESolution>& sols);

}  // namespace sehgalkit
