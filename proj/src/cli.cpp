#include "csa/cli.hpp"

#include <signal.h>

#include <CLI11.hpp>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "csa/api_server.hpp"
#include "csa/error.hpp"
#include "csa/io.hpp"

namespace csa::cli {

using nlohmann::json;

namespace {

enum class Format { Json, Plain };

std::string fixed(double v, int precision = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

std::string join(const json& ids, const char* sep = ", ") {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += sep;
    out += id.get<std::string>();
  }
  return out;
}

void print_weights(std::ostream& out, const json& weights) {
  for (const auto& w : weights)
    out << "  " << std::left << std::setw(16) << w["id"].get<std::string>() << std::right
        << fixed(w["weight"].get<double>()) << "\n";
}

void print_consistency(std::ostream& out, const json& r) {
  out << "  lambda_max " << fixed(r["lambda_max"].get<double>(), 3) << "  C.R. "
      << fixed(r["consistency_ratio"].get<double>() * 100.0, 3) << "%  "
      << (r["acceptable"].get<bool>() ? "acceptable" : "NOT acceptable") << "\n";
}

void print_ranking(std::ostream& out, const json& ranking) {
  if (ranking.is_null()) {
    out << "ranking: none (relation is not a linear order, weak order or semiorder)\n";
    return;
  }
  const auto kind = ranking["kind"].get<std::string>();
  if (kind == "CHAIN") {
    out << "ranking: " << join(ranking["chain"], " > ") << "\n";
  } else if (kind == "RANKED_PARTITION") {
    std::string line;
    for (const auto& block : ranking["blocks"]) {
      if (!line.empty()) line += " > ";
      line += join(block, " ~ ");
    }
    out << "ranking: " << line << "\n";
  } else {
    out << "chains:\n";
    for (const auto& c : ranking["chains"]) out << "  " << c["text"].get<std::string>() << "\n";
  }
}

void print_analysis(std::ostream& out, const json& a) {
  out << "class: " << a["class"].get<std::string>() << "\n";
  out << "axioms:\n";
  for (const auto& r : a["axioms"]) {
    out << "  " << std::left << std::setw(20) << r["property"].get<std::string>() << std::right
        << (r["holds"].get<bool>() ? "holds" : "fails");
    if (!r["counterexamples"].empty())
      out << "  e.g. (" << join(r["counterexamples"][0]) << ")";
    out << "\n";
  }
  if (!a["indifference"].empty()) {
    out << "indifferent:";
    for (const auto& p : a["indifference"]) out << " " << join(p, "~");
    out << "\n";
  }
  if (!a["unjudged"].empty()) out << "unjudged pairs: " << a["unjudged"].size() << "\n";
  print_ranking(out, a["ranking"]);
}

void print_trisection(std::ostream& out, const json& t) {
  out << "method: " << t["method"].get<std::string>() << "  h = " << fixed(t["h"].get<double>())
      << "  l = " << fixed(t["l"].get<double>());
  if (t.contains("mu"))
    out << "  mu = " << fixed(t["mu"].get<double>()) << "  sigma = "
        << fixed(t["sigma"].get<double>());
  out << "\n";
  out << "  H: " << join(t["high"]) << "\n";
  out << "  M: " << join(t["medium"]) << "\n";
  out << "  L: " << join(t["low"]) << "\n";
}

void emit(std::ostream& out, Format format, const json& doc,
          const std::function<void(std::ostream&, const json&)>& plain) {
  if (format == Format::Json) {
    out << doc.dump(2) << "\n";
  } else {
    plain(out, doc);
  }
}

std::optional<DisorderSet> disorders_of(const json& doc) {
  if (doc.is_object() && doc.contains("disorders")) return io::parse_disorders(doc["disorders"]);
  return std::nullopt;
}

json matrix_weights(const weighting::ComparisonMatrix& m) {
  const auto e = weighting::principal_eigen(m);
  const auto c = weighting::consistency(m, e);
  auto out = io::to_json(c);
  out["weights"] = io::to_json(e.weights);
  out["iterations"] = e.iterations;
  return out;
}

int validate_cmd(const json& doc, Format format, std::ostream& out) {
  if (doc.is_object() && doc.contains("rows")) {
    const auto report = weighting::validate_matrix(io::parse_matrix(doc));
    emit(out, format, io::to_json(report), [](std::ostream& o, const json& r) {
      o << (r["valid"].get<bool>() ? "valid" : "INVALID") << "\n";
      for (const auto& e : r["errors"]) o << "  error: " << e["message"].get<std::string>() << "\n";
      for (const auto& w : r["warnings"])
        o << "  warning: " << w["message"].get<std::string>() << "\n";
    });
    return report.valid() ? kExitOk : kExitValidation;
  }
  const auto rel = io::parse_relation_document(doc);
  const auto analysis = io::analysis_to_json(rel.disorders, rel.judgments);
  emit(out, format, analysis, print_analysis);
  return analysis["class"] == "UNCLASSIFIED" ? kExitValidation : kExitOk;
}

int rank_cmd(const json& doc, Format format, std::ostream& out) {
  const auto rel_doc = io::parse_relation_document(doc);
  const auto rel = order::build_relation(rel_doc.disorders, rel_doc.judgments);
  const auto cls = order::classify(rel);
  const auto ranking = order::rank(rel);
  json result = {{"class", std::string(order::to_string(cls))},
                 {"ranking", ranking ? io::to_json(*ranking, rel_doc.disorders) : json(nullptr)}};
  emit(out, format, result, [](std::ostream& o, const json& r) {
    o << "class: " << r["class"].get<std::string>() << "\n";
    print_ranking(o, r["ranking"]);
  });
  return ranking ? kExitOk : kExitValidation;
}

int weigh_cmd(const json& doc, Format format, std::ostream& out) {
  if (doc.is_object() && doc.contains("rows")) {
    emit(out, format, matrix_weights(io::parse_matrix(doc)), [](std::ostream& o, const json& r) {
      print_weights(o, r["weights"]);
      print_consistency(o, r);
    });
    return kExitOk;
  }
  const auto universe = disorders_of(doc);
  const auto h = io::parse_hierarchy(doc);
  const auto result = io::to_json(weighting::weigh_hierarchy(h, universe ? &*universe : nullptr));
  emit(out, format, result, [](std::ostream& o, const json& r) {
    o << "global weights:\n";
    print_weights(o, r["global"]);
    for (const auto& rep : r["reports"]) {
      o << "matrix " << rep["matrix"].get<std::string>() << ":\n";
      print_consistency(o, rep);
    }
  });
  return kExitOk;
}

int scale_cmd(const json& doc, Format format, std::ostream& out) {
  if (!doc.is_object() || !doc.contains("levels") || !doc.contains("matrix")) {
    throw Error(ErrorCode::ParseError, "scale document needs 'levels' and 'matrix'");
  }
  const auto levels = doc["levels"].get<std::vector<std::string>>();
  const auto scale = weighting::build_importance_scale(levels, io::parse_matrix(doc["matrix"], &levels));
  auto result = io::to_json(scale);
  if (doc.contains("assignment")) {
    const auto assignment = doc["assignment"].get<std::map<DisorderId, std::string>>();
    auto universe = disorders_of(doc);
    if (!universe) {
      std::vector<DisorderId> ids;
      for (const auto& [id, level] : assignment) ids.push_back(id);
      universe = DisorderSet::from_ids(ids);
    }
    const auto w = weighting::assign_scale_weights(scale, assignment, *universe);
    result["raw"] = io::to_json(w.raw);
    result["normalized"] = io::to_json(w.normalized);
  }
  emit(out, format, result, [](std::ostream& o, const json& r) {
    o << "level weights:\n";
    print_weights(o, r["level_weights"]);
    print_consistency(o, r["consistency"]);
    if (r.contains("normalized")) {
      o << "disorder weights (normalized):\n";
      print_weights(o, r["normalized"]);
    }
  });
  return kExitOk;
}

trisection::ValueMap values_of(const json& doc, std::string& source) {
  trisection::ValueMap values;
  if (doc.is_object() && doc.contains("clusters")) {
    const auto universe = disorders_of(doc);
    const auto w =
        weighting::weigh_hierarchy(io::parse_hierarchy(doc), universe ? &*universe : nullptr).global;
    values.ids = w.ids;
    values.values = w.values;
    source = "weights";
  } else if (doc.is_object() && doc.contains("disorders") && !doc.contains("weights")) {
    const auto rel_doc = io::parse_relation_document(doc);
    values = trisection::esv(order::build_relation(rel_doc.disorders, rel_doc.judgments)).values();
    source = "esv";
  } else {
    const auto w = io::parse_weight_vector(doc);
    values.ids = w.ids;
    values.values = w.values;
    source = "weights";
  }
  return values;
}

struct Options {
  std::string format = "json";
  std::optional<std::string> data_dir;
  std::string file;
  std::string method = "percentile";
  double alpha = 0.0;
  double beta = 0.0;
  double k1 = 1.0;
  double k2 = 1.0;
  std::optional<int> port;
  std::string allow_origin;
  std::string host = "127.0.0.1";
};

int serve_cmd(const Options& opts, std::ostream& out, std::ostream& err) {
  int port = 8080;
  if (const char* env = std::getenv("CSA_PORT"); env && *env) port = std::atoi(env);
  if (opts.port) port = *opts.port;

  store::SessionStore store(store::resolve_data_dir(opts.data_dir));
  api::ServerConfig config;
  config.host = opts.host;
  config.port = port;
  config.allow_origin = opts.allow_origin;
  api::ApiServer server(store, config);
  if (!server.bind()) {
    err << "csa: port " << port << " is already in use\n";
    return kExitValidation;
  }

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });

  out << "csa " << api::kVersion << " listening on " << config.host << ":" << server.port()
      << " (data: " << store.data_dir().string() << ")" << std::endl;
  server.listen();
  // listen() returns only after stop(); release the waiter if it is still blocked.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clinician subjective-judgment decision support: ranking, weighting, trisection",
               "csa"};
  app.require_subcommand(1);
  Options opts;
  app.add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "plain"}))
      ->capture_default_str();
  app.add_option("--data-dir", opts.data_dir, "Session data directory (env CSA_DATA_DIR)");

  auto* validate = app.add_subcommand("validate", "Axiom reports and class of a relation, or matrix validation");
  auto* rank = app.add_subcommand("rank", "Chain, ranked partition or chain set of a relation");
  auto* weigh = app.add_subcommand("weigh", "Hierarchy (or single matrix) weights with consistency reports");
  auto* scale = app.add_subcommand("scale", "Importance-scale level weights and disorder assignment");
  auto* trisect = app.add_subcommand("trisect", "High/medium/low regions from ESVs or weights");
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");

  for (auto* sub : {validate, rank, weigh, scale, trisect})
    sub->add_option("file", opts.file, "Input document")->required()->check(CLI::ExistingFile);

  trisect->add_option("--method", opts.method, "percentile or statistical")
      ->check(CLI::IsMember({"percentile", "statistical"}))
      ->capture_default_str();
  auto* alpha = trisect->add_option("--alpha", opts.alpha, "Upper percentile (percentile method)");
  auto* beta = trisect->add_option("--beta", opts.beta, "Lower percentile (percentile method)");
  trisect->add_option("--k1", opts.k1, "Offset of h above the mean in sigmas")->capture_default_str();
  trisect->add_option("--k2", opts.k2, "Offset of l below the mean in sigmas")->capture_default_str();

  serve->add_option("--port", opts.port, "Port (env CSA_PORT, default 8080)");
  serve->add_option("--allow-origin", opts.allow_origin, "Origin permitted for cross-origin requests");
  serve->add_option("--host", opts.host, "Interface to bind")->capture_default_str();

  std::vector<const char*> argv{"csa"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "csa: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  if (trisect->parsed() && opts.method == "percentile" && (!alpha->count() || !beta->count())) {
    err << "csa: trisect --method percentile needs --alpha and --beta\n\n" << trisect->help();
    return kExitUsage;
  }

  const Format format = opts.format == "plain" ? Format::Plain : Format::Json;
  try {
    if (serve->parsed()) return serve_cmd(opts, out, err);
    const auto doc = io::read_file(opts.file);
    if (validate->parsed()) return validate_cmd(doc, format, out);
    if (rank->parsed()) return rank_cmd(doc, format, out);
    if (weigh->parsed()) return weigh_cmd(doc, format, out);
    if (scale->parsed()) return scale_cmd(doc, format, out);

    trisection::Params params;
    params.method = trisection::parse_method(opts.method);
    params.alpha = opts.alpha;
    params.beta = opts.beta;
    params.k1 = opts.k1;
    params.k2 = opts.k2;
    std::string source;
    const auto values = values_of(doc, source);
    auto result = io::to_json(trisection::run(values, params));
    result["source"] = source;
    emit(out, format, result, print_trisection);
    return kExitOk;
  } catch (const Error& e) {
    err << e.to_json().dump(2) << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << Error(ErrorCode::ParseError, e.what()).to_json().dump(2) << "\n";
    return kExitValidation;
  }
}

}  // namespace csa::cli
