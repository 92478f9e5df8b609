#include "csa/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "csa/error.hpp"

namespace csa::io {

namespace {

[[noreturn]] void parse_error(const std::string& message) {
  throw Error(ErrorCode::ParseError, message);
}

const json& field(const json& j, const char* name, const char* context) {
  if (!j.is_object()) parse_error(std::string(context) + " must be an object");
  auto it = j.find(name);
  if (it == j.end()) parse_error(std::string(context) + " is missing '" + name + "'");
  return *it;
}

std::string string_of(const json& j, const std::string& what) {
  if (!j.is_string()) parse_error(what + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> strings_of(const json& j, const std::string& what) {
  if (!j.is_array()) parse_error(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(string_of(e, what + " entry"));
  return out;
}

json ids_of(const std::vector<std::size_t>& idx, const DisorderSet& universe) {
  json out = json::array();
  for (auto i : idx) out.push_back(universe[i].id);
  return out;
}

}  // namespace

DisorderSet parse_disorders(const json& j) {
  if (!j.is_array()) parse_error("'disorders' must be an array");
  std::vector<Disorder> out;
  for (const auto& e : j) {
    if (e.is_string()) {
      out.push_back({e.get<std::string>(), e.get<std::string>()});
    } else if (e.is_object()) {
      Disorder d;
      d.id = string_of(field(e, "id", "disorder"), "disorder id");
      d.label = e.contains("label") ? string_of(e["label"], "disorder label") : d.id;
      out.push_back(std::move(d));
    } else {
      parse_error("disorder entries must be strings or objects");
    }
  }
  return DisorderSet(std::move(out));
}

json to_json(const DisorderSet& set) {
  json out = json::array();
  for (const auto& d : set.disorders()) out.push_back({{"id", d.id}, {"label", d.label}});
  return out;
}

std::string_view to_string(order::Verdict v) {
  switch (v) {
    case order::Verdict::Preferred: return "PREFERRED";
    case order::Verdict::LessPreferred: return "LESS_PREFERRED";
    case order::Verdict::Indifferent: return "INDIFFERENT";
  }
  return "";
}

order::Verdict parse_verdict(std::string_view s) {
  if (s == "PREFERRED") return order::Verdict::Preferred;
  if (s == "LESS_PREFERRED") return order::Verdict::LessPreferred;
  if (s == "INDIFFERENT") return order::Verdict::Indifferent;
  parse_error("unknown verdict '" + std::string(s) + "'");
}

order::PairJudgment parse_judgment(const json& j) {
  order::PairJudgment out;
  out.first = string_of(field(j, "first", "judgment"), "judgment first");
  out.second = string_of(field(j, "second", "judgment"), "judgment second");
  out.verdict = parse_verdict(string_of(field(j, "verdict", "judgment"), "verdict"));
  return out;
}

std::vector<order::PairJudgment> parse_judgments(const json& j) {
  if (!j.is_array()) parse_error("'judgments' must be an array");
  std::vector<order::PairJudgment> out;
  for (const auto& e : j) out.push_back(parse_judgment(e));
  return out;
}

json to_json(const order::PairJudgment& j) {
  return {{"first", j.first}, {"second", j.second}, {"verdict", std::string(to_string(j.verdict))}};
}

json judgments_to_json(std::vector<order::PairJudgment> judgments) {
  std::stable_sort(judgments.begin(), judgments.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first, a.second) < std::tie(b.first, b.second);
  });
  json out = json::array();
  for (const auto& j : judgments) out.push_back(to_json(j));
  return out;
}

RelationDocument parse_relation_document(const json& j) {
  RelationDocument doc;
  doc.disorders = parse_disorders(field(j, "disorders", "relation document"));
  if (j.contains("judgments")) doc.judgments = parse_judgments(j["judgments"]);
  return doc;
}

json to_json(const RelationDocument& doc) {
  json ids = json::array();
  for (const auto& d : doc.disorders.disorders()) ids.push_back(d.id);
  return {{"disorders", ids}, {"judgments", judgments_to_json(doc.judgments)}};
}

double parse_entry(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) parse_error("matrix entries must be numbers or strings");
  const auto s = j.get<std::string>();
  auto parse_number = [&](const std::string& text) {
    if (text.empty()) parse_error("malformed matrix entry '" + s + "'");
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) parse_error("malformed matrix entry '" + s + "'");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_number(s);
  const double num = parse_number(s.substr(0, slash));
  const double den = parse_number(s.substr(slash + 1));
  if (den == 0.0) parse_error("matrix entry '" + s + "' divides by zero");
  return num / den;
}

weighting::ComparisonMatrix parse_matrix(const json& j,
                                         const std::vector<std::string>* default_labels) {
  std::vector<std::string> labels;
  if (j.is_object() && j.contains("labels")) {
    labels = strings_of(j["labels"], "matrix labels");
  } else if (default_labels) {
    labels = *default_labels;
  } else {
    parse_error("matrix is missing 'labels'");
  }
  const auto& rows_json = field(j, "rows", "matrix");
  if (!rows_json.is_array()) parse_error("matrix 'rows' must be an array");
  std::vector<std::vector<double>> rows;
  for (const auto& r : rows_json) {
    if (!r.is_array()) parse_error("matrix rows must be arrays");
    std::vector<double> row;
    for (const auto& e : r) row.push_back(parse_entry(e));
    rows.push_back(std::move(row));
  }
  return weighting::ComparisonMatrix(std::move(labels), std::move(rows));
}

double round_significant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

json to_json(const weighting::ComparisonMatrix& m) {
  json rows = json::array();
  for (const auto& r : m.rows()) {
    json row = json::array();
    for (double v : r) row.push_back(round_significant(v));
    rows.push_back(std::move(row));
  }
  return {{"labels", m.labels()}, {"rows", rows}};
}

weighting::Hierarchy parse_hierarchy(const json& j) {
  weighting::Hierarchy h;
  const auto& clusters = field(j, "clusters", "hierarchy");
  if (!clusters.is_array()) parse_error("'clusters' must be an array");
  for (const auto& c : clusters) {
    weighting::Cluster cluster;
    cluster.id = string_of(field(c, "id", "cluster"), "cluster id");
    if (c.contains("clusters")) {
      parse_error("cluster '" + cluster.id + "' nests clusters; only three levels are supported");
    }
    cluster.members = strings_of(field(c, "members", "cluster"), "cluster members");
    if (c.contains("matrix") && !c["matrix"].is_null()) {
      cluster.matrix = parse_matrix(c["matrix"], &cluster.members);
    }
    h.clusters.push_back(std::move(cluster));
  }
  if (j.contains("cluster_matrix") && !j["cluster_matrix"].is_null()) {
    std::vector<std::string> ids;
    for (const auto& c : h.clusters) ids.push_back(c.id);
    h.cluster_matrix = parse_matrix(j["cluster_matrix"], &ids);
  }
  return h;
}

json to_json(const weighting::Hierarchy& h) {
  json clusters = json::array();
  for (const auto& c : h.clusters) {
    json entry = {{"id", c.id}, {"members", c.members}};
    if (c.matrix) entry["matrix"] = to_json(*c.matrix);
    clusters.push_back(std::move(entry));
  }
  json out = {{"clusters", clusters}};
  if (h.cluster_matrix) out["cluster_matrix"] = to_json(*h.cluster_matrix);
  return out;
}

json to_json(const order::AxiomReport& r, const DisorderSet& universe) {
  json witnesses = json::array();
  for (const auto& w : r.counterexamples) witnesses.push_back(ids_of(w, universe));
  return {{"property", std::string(to_string(r.property))},
          {"holds", r.holds},
          {"counterexamples", witnesses}};
}

std::string render_chain(const order::PresentationChain& c, const DisorderSet& universe) {
  std::string out = universe[c.elements.front()].id;
  for (std::size_t i = 0; i < c.links.size(); ++i) {
    out += c.links[i] == order::Link::Strict ? " > " : " ~ ";
    out += universe[c.elements[i + 1]].id;
  }
  return out;
}

json to_json(const order::PresentationChain& c, const DisorderSet& universe) {
  json links = json::array();
  for (auto l : c.links) links.push_back(l == order::Link::Strict ? "STRICT" : "TIE");
  return {{"elements", ids_of(c.elements, universe)},
          {"links", links},
          {"text", render_chain(c, universe)}};
}

json to_json(const order::Ranking& r, const DisorderSet& universe) {
  json out = {{"kind", std::string(to_string(r.kind))}};
  switch (r.kind) {
    case order::RankingKind::Chain:
      out["chain"] = ids_of(r.chain, universe);
      break;
    case order::RankingKind::RankedPartition: {
      json blocks = json::array();
      for (const auto& b : r.blocks) blocks.push_back(ids_of(b, universe));
      out["blocks"] = blocks;
      break;
    }
    case order::RankingKind::ChainSet: {
      json chains = json::array();
      for (const auto& c : r.chains) chains.push_back(to_json(c, universe));
      out["chains"] = chains;
      break;
    }
  }
  return out;
}

json to_json(const weighting::WeightVector& w) {
  json out = json::array();
  for (std::size_t i = 0; i < w.size(); ++i)
    out.push_back({{"id", w.ids[i]}, {"weight", w.values[i]}});
  return out;
}

weighting::WeightVector parse_weight_vector(const json& j) {
  const json* list = &j;
  if (j.is_object()) {
    if (j.contains("weights")) {
      list = &j["weights"];
    } else if (j.contains("global")) {
      list = &j["global"];
    } else if (j.contains("normalized")) {
      list = &j["normalized"];
    } else {
      parse_error("weights document needs 'weights', 'global' or 'normalized'");
    }
  }
  if (!list->is_array()) parse_error("weights must be an array of {id, weight}");
  weighting::WeightVector w;
  for (const auto& e : *list) {
    w.ids.push_back(string_of(field(e, "id", "weight entry"), "weight id"));
    const auto& v = field(e, "weight", "weight entry");
    if (!v.is_number()) parse_error("weight must be a number");
    w.values.push_back(v.get<double>());
  }
  return w;
}

json to_json(const weighting::ValidationReport& r) {
  auto issues = [](const std::vector<weighting::MatrixIssue>& list) {
    json out = json::array();
    for (const auto& e : list)
      out.push_back({{"kind", weighting::to_string(e.kind)},
                     {"row", e.row},
                     {"col", e.col},
                     {"message", e.message}});
    return out;
  };
  return {{"valid", r.valid()}, {"errors", issues(r.errors)}, {"warnings", issues(r.warnings)}};
}

json to_json(const weighting::ConsistencyReport& r) {
  return {{"order", r.order},
          {"lambda_max", r.lambda_max},
          {"consistency_index", r.consistency_index},
          {"random_index", r.random_index},
          {"consistency_ratio", r.consistency_ratio},
          {"acceptable", r.acceptable}};
}

json to_json(const weighting::HierarchyWeights& w) {
  json per_cluster = json::array();
  for (const auto& id : w.cluster_weights.ids)
    per_cluster.push_back({{"id", id}, {"weights", to_json(w.per_cluster.at(id))}});
  json reports = json::array();
  for (const auto& r : w.reports) {
    auto entry = to_json(r.consistency);
    entry["matrix"] = r.matrix;
    entry["iterations"] = r.eigen.iterations;
    reports.push_back(std::move(entry));
  }
  return {{"global", to_json(w.global)},
          {"clusters", to_json(w.cluster_weights)},
          {"per_cluster", per_cluster},
          {"reports", reports}};
}

json to_json(const weighting::ImportanceScale& s) {
  return {{"levels", s.levels},
          {"level_weights", to_json(s.level_weights)},
          {"consistency", to_json(s.consistency)}};
}

json to_json(const weighting::ScaleWeights& s) {
  return {{"raw", to_json(s.raw)}, {"normalized", to_json(s.normalized)}};
}

json to_json(const trisection::EsvList& e) {
  json values = json::array();
  for (const auto& entry : e.descending)
    values.push_back({{"id", entry.id},
                      {"dominated", entry.dominated},
                      {"value", entry.value}});
  return {{"n", e.n}, {"descending", values}};
}

json to_json(const trisection::Trisection& t) {
  json out = {{"method", std::string(to_string(t.method))},
              {"h", t.h},
              {"l", t.l},
              {"high", t.high},
              {"medium", t.medium},
              {"low", t.low}};
  if (t.mu) out["mu"] = *t.mu;
  if (t.sigma) out["sigma"] = *t.sigma;
  return out;
}

json to_json(const trisection::Params& p) {
  json out = {{"method", std::string(to_string(p.method))}};
  if (p.method == trisection::Method::Percentile) {
    out["alpha"] = p.alpha;
    out["beta"] = p.beta;
  } else {
    out["k1"] = p.k1;
    out["k2"] = p.k2;
  }
  return out;
}

trisection::Params parse_trisection_params(const json& j) {
  trisection::Params p;
  p.method = trisection::parse_method(string_of(field(j, "method", "trisection params"),
                                                "trisection method"));
  auto number = [&](const char* name) {
    const auto& v = field(j, name, "trisection params");
    if (!v.is_number()) parse_error(std::string("'") + name + "' must be a number");
    return v.get<double>();
  };
  if (p.method == trisection::Method::Percentile) {
    p.alpha = number("alpha");
    p.beta = number("beta");
  } else {
    p.k1 = number("k1");
    p.k2 = number("k2");
  }
  trisection::validate(p);
  return p;
}

json analysis_to_json(const DisorderSet& universe,
                      const std::vector<order::PairJudgment>& judgments) {
  const auto rel = order::build_relation(universe, judgments);

  json unjudged = json::array();
  for (const auto& [a, b] : order::unjudged_pairs(universe, judgments))
    unjudged.push_back({a, b});
  json indifference = json::array();
  for (const auto& [a, b] : order::derive_indifference(rel).pairs)
    indifference.push_back({universe[a].id, universe[b].id});
  json relation = json::array();
  for (const auto& [a, b] : rel.pairs()) relation.push_back({universe[a].id, universe[b].id});
  json axioms = json::array();
  for (auto a : {order::Axiom::Asymmetric, order::Axiom::Transitive,
                 order::Axiom::WeaklyComplete, order::Axiom::NegativeTransitive,
                 order::Axiom::Ferrers, order::Axiom::Semitransitive})
    axioms.push_back(to_json(order::check_axiom(rel, a), universe));

  const auto cls = order::classify(rel);
  const auto ranking = order::rank(rel);
  json out = {{"unjudged", unjudged},
              {"relation", relation},
              {"indifference", indifference},
              {"axioms", axioms},
              {"class", std::string(to_string(cls))},
              {"ranking", ranking ? to_json(*ranking, universe) : json(nullptr)},
              {"esv", to_json(trisection::esv(rel))}};
  try {
    out["topological_order"] = ids_of(trisection::topo_rank(rel), universe);
  } catch (const Error&) {
    out["topological_order"] = nullptr;
  }
  return out;
}

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, source + ": " + e.what(), {{"source", source}});
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot open '" + path + "'", {{"path", path}});
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

}  // namespace csa::io
