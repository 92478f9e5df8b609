#pragma once

// JSON exchange formats shared by the CLI, the HTTP API and the session store.
// Parsing failures throw Error(ParseError) naming the offending field.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "csa/disorder.hpp"
#include "csa/eigen_weighting.hpp"
#include "csa/order_relations.hpp"
#include "csa/trisection.hpp"

namespace csa::io {

using nlohmann::json;

// -- disorders and relations ------------------------------------------------

/// Accepts ["d1", ...] or [{"id": "d1", "label": "..."}, ...].
DisorderSet parse_disorders(const json& j);
json to_json(const DisorderSet& set);

std::string_view to_string(order::Verdict v);
order::Verdict parse_verdict(std::string_view s);

order::PairJudgment parse_judgment(const json& j);
std::vector<order::PairJudgment> parse_judgments(const json& j);
json to_json(const order::PairJudgment& j);
/// Sorted by (first, second).
json judgments_to_json(std::vector<order::PairJudgment> judgments);

struct RelationDocument {
  DisorderSet disorders;
  std::vector<order::PairJudgment> judgments;
};

/// {"disorders": [...], "judgments": [{"first", "second", "verdict"}]}
RelationDocument parse_relation_document(const json& j);
json to_json(const RelationDocument& doc);

// -- matrices ---------------------------------------------------------------

/// A number, or a string holding a decimal or a fraction such as "1/7".
double parse_entry(const json& j);

/// {"labels": [...], "rows": [[...], ...]}. When labels are absent and
/// `default_labels` is given, those are used.
weighting::ComparisonMatrix parse_matrix(const json& j,
                                         const std::vector<std::string>* default_labels = nullptr);

/// Entries rounded to 12 significant digits.
json to_json(const weighting::ComparisonMatrix& m);

/// {"clusters": [{"id", "members", "matrix"?}], "cluster_matrix"?: {...}}.
/// Clusters nested inside clusters are rejected.
weighting::Hierarchy parse_hierarchy(const json& j);
json to_json(const weighting::Hierarchy& h);

/// Shortest representation of value after rounding to `digits` significant digits.
double round_significant(double value, int digits = 12);

// -- engine results ---------------------------------------------------------

json to_json(const order::AxiomReport& r, const DisorderSet& universe);
json to_json(const order::Ranking& r, const DisorderSet& universe);
json to_json(const order::PresentationChain& c, const DisorderSet& universe);
/// Rendering such as "d1 > d2 ~ d3 > d5".
std::string render_chain(const order::PresentationChain& c, const DisorderSet& universe);

/// [{"id": ..., "weight": ...}] in vector order.
json to_json(const weighting::WeightVector& w);
weighting::WeightVector parse_weight_vector(const json& j);
json to_json(const weighting::ValidationReport& r);
json to_json(const weighting::ConsistencyReport& r);
json to_json(const weighting::HierarchyWeights& w);
json to_json(const weighting::ImportanceScale& s);
json to_json(const weighting::ScaleWeights& s);

json to_json(const trisection::EsvList& e);
json to_json(const trisection::Trisection& t);
json to_json(const trisection::Params& p);
trisection::Params parse_trisection_params(const json& j);

/// Full qualitative analysis: unjudged pairs, axiom reports, indifference,
/// classification and ranking (when classifiable).
json analysis_to_json(const DisorderSet& universe,
                      const std::vector<order::PairJudgment>& judgments);

// -- helpers ----------------------------------------------------------------

json parse_text(const std::string& text, const std::string& source = "input");
json read_file(const std::string& path);

}  // namespace csa::io
