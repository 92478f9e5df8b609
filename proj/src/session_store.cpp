#include "csa/session_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

#include "csa/error.hpp"
#include "csa/io.hpp"

namespace csa::store {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json exact_matrix(const weighting::ComparisonMatrix& m) {
  return {{"labels", m.labels()}, {"rows", m.rows()}};
}

json exact_hierarchy(const weighting::Hierarchy& h) {
  json clusters = json::array();
  for (const auto& c : h.clusters) {
    json entry = {{"id", c.id}, {"members", c.members}};
    entry["matrix"] = c.matrix ? exact_matrix(*c.matrix) : json(nullptr);
    clusters.push_back(std::move(entry));
  }
  return {{"clusters", clusters},
          {"cluster_matrix", h.cluster_matrix ? exact_matrix(*h.cluster_matrix) : json(nullptr)}};
}

std::string random_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << std::hex;
  for (int i = 0; i < 2; ++i) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
    out << buf;
  }
  return out.str();
}

bool valid_id(const std::string& id) {
  return !id.empty() && id.size() <= 128 &&
         std::all_of(id.begin(), id.end(), [](unsigned char c) {
           return std::isalnum(c) || c == '-' || c == '_';
         });
}

void canonicalize(std::vector<order::PairJudgment>& judgments) {
  std::stable_sort(judgments.begin(), judgments.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first, a.second) < std::tie(b.first, b.second);
  });
}

[[noreturn]] void storage_failure(const std::string& what, const fs::path& path) {
  throw Error(ErrorCode::StorageFailure, what + " '" + path.string() + "': " + std::strerror(errno),
              {{"path", path.string()}});
}

void validate_scale(const ScaleSetting& s, const DisorderSet& disorders) {
  if (s.levels.size() < 2 || s.levels.size() > weighting::kMaxOrder) {
    throw Error(ErrorCode::InvalidMatrix, "an importance scale needs 2..9 levels",
                {{"levels", s.levels.size()}});
  }
  if (s.level_matrix.labels() != s.levels) {
    throw Error(ErrorCode::InvalidMatrix, "level matrix labels do not match the levels");
  }
  weighting::require_valid(s.level_matrix, "levels");
  for (const auto& [id, level] : s.assignment) {
    disorders.index_of(id);
    if (std::find(s.levels.begin(), s.levels.end(), level) == s.levels.end()) {
      throw Error(ErrorCode::UnknownLevel, "unknown importance level '" + level + "'",
                  {{"id", id}, {"level", level}});
    }
  }
}

}  // namespace

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json to_json(const Session& s) {
  json scale = nullptr;
  if (s.scale) {
    scale = {{"levels", s.scale->levels},
             {"matrix", exact_matrix(s.scale->level_matrix)},
             {"assignment", s.scale->assignment}};
  }
  json judgments = json::array();
  for (const auto& j : s.judgments) judgments.push_back(io::to_json(j));
  return {{"schema_version", kSchemaVersion},
          {"id", s.id},
          {"created_at", s.created_at},
          {"updated_at", s.updated_at},
          {"revision", s.revision},
          {"disorders", io::to_json(s.disorders)},
          {"judgments", judgments},
          {"hierarchy", s.hierarchy ? exact_hierarchy(*s.hierarchy) : json(nullptr)},
          {"scale", scale},
          {"trisection_params",
           s.trisection_params ? io::to_json(*s.trisection_params) : json(nullptr)},
          {"notes", s.notes}};
}

Session session_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "session document must be an object");
  const auto version = j.value("schema_version", 0);
  if (version != kSchemaVersion) {
    throw Error(ErrorCode::ParseError,
                "unsupported schema_version " + std::to_string(version),
                {{"schema_version", version}});
  }
  try {
    Session s;
    s.id = j.at("id").get<std::string>();
    s.created_at = j.at("created_at").get<std::string>();
    s.updated_at = j.at("updated_at").get<std::string>();
    s.revision = j.at("revision").get<std::uint64_t>();
    s.disorders = io::parse_disorders(j.at("disorders"));
    s.judgments = io::parse_judgments(j.at("judgments"));
    if (!j.at("hierarchy").is_null()) s.hierarchy = io::parse_hierarchy(j["hierarchy"]);
    if (!j.at("scale").is_null()) {
      const auto& sc = j["scale"];
      ScaleSetting setting;
      setting.levels = sc.at("levels").get<std::vector<std::string>>();
      setting.level_matrix = io::parse_matrix(sc.at("matrix"), &setting.levels);
      setting.assignment = sc.at("assignment").get<std::map<DisorderId, std::string>>();
      s.scale = std::move(setting);
    }
    if (!j.at("trisection_params").is_null()) {
      s.trisection_params = io::parse_trisection_params(j["trisection_params"]);
    }
    s.notes = j.at("notes").get<std::string>();
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed session document: ") + e.what());
  }
}

json to_json(const SessionSummary& s) {
  return {{"id", s.id},
          {"created_at", s.created_at},
          {"updated_at", s.updated_at},
          {"disorder_count", s.disorder_count},
          {"revision", s.revision}};
}

Session apply(const Session& session, const Mutation& m) {
  Session next = session;
  try {
    std::visit(
        [&](const auto& mut) {
          using T = std::decay_t<decltype(mut)>;
          if constexpr (std::is_same_v<T, mutation::SetJudgments>) {
            order::build_relation(next.disorders, mut.judgments);
            next.judgments = mut.judgments;
          } else if constexpr (std::is_same_v<T, mutation::AddJudgment>) {
            const auto& added = mut.judgment;
            std::erase_if(next.judgments, [&](const auto& j) {
              return (j.first == added.first && j.second == added.second) ||
                     (j.first == added.second && j.second == added.first);
            });
            next.judgments.push_back(added);
            order::build_relation(next.disorders, next.judgments);
          } else if constexpr (std::is_same_v<T, mutation::SetHierarchy>) {
            if (mut.hierarchy) weighting::validate_hierarchy(*mut.hierarchy, &next.disorders);
            next.hierarchy = mut.hierarchy;
          } else if constexpr (std::is_same_v<T, mutation::SetScale>) {
            if (mut.scale) validate_scale(*mut.scale, next.disorders);
            next.scale = mut.scale;
          } else if constexpr (std::is_same_v<T, mutation::SetTrisectionParams>) {
            if (mut.params) trisection::validate(*mut.params);
            next.trisection_params = mut.params;
          } else if constexpr (std::is_same_v<T, mutation::SetNotes>) {
            next.notes = mut.notes;
          }
        },
        m);
  } catch (const Error& e) {
    auto details = e.details();
    details["cause"] = std::string(to_string(e.code()));
    throw Error(ErrorCode::ValidationFailure, e.what(), std::move(details));
  }
  canonicalize(next.judgments);
  return next;
}

fs::path resolve_data_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("CSA_DATA_DIR"); env && *env) return env;
  return "data";
}

SessionStore::SessionStore(fs::path data_dir)
    : data_dir_(std::move(data_dir)), sessions_dir_(data_dir_ / "sessions") {
  std::error_code ec;
  fs::create_directories(sessions_dir_, ec);
  if (ec || ::access(sessions_dir_.c_str(), W_OK) != 0) {
    throw Error(ErrorCode::StorageFailure,
                "data directory '" + data_dir_.string() + "' is not writable",
                {{"path", data_dir_.string()}});
  }
}

fs::path SessionStore::path_of(const std::string& id) const {
  return sessions_dir_ / (id + ".json");
}

std::mutex& SessionStore::lock_for(const std::string& id) {
  std::lock_guard guard(locks_guard_);
  auto& slot = locks_[id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

void SessionStore::write(const Session& s) const {
  const auto target = path_of(s.id);
  const auto tmp = sessions_dir_ / ("." + s.id + ".json.tmp-" + random_id().substr(0, 8));
  const auto text = to_json(s).dump(2) + "\n";

  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) storage_failure("cannot create", tmp);
  std::size_t written = 0;
  while (written < text.size()) {
    const auto n = ::write(fd, text.data() + written, text.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      fs::remove(tmp);
      storage_failure("cannot write", tmp);
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    fs::remove(tmp);
    storage_failure("cannot flush", tmp);
  }
  if (std::rename(tmp.c_str(), target.c_str()) != 0) {
    fs::remove(tmp);
    storage_failure("cannot commit", target);
  }
}

Session SessionStore::create(const DisorderSet& disorders, std::string notes) {
  if (disorders.empty()) {
    throw Error(ErrorCode::InvalidDisorderSet, "disorder set must not be empty");
  }
  Session s;
  do {
    s.id = random_id();
  } while (fs::exists(path_of(s.id)));
  s.created_at = s.updated_at = utc_now();
  s.revision = 1;
  s.disorders = disorders;
  s.notes = std::move(notes);
  std::lock_guard guard(lock_for(s.id));
  write(s);
  return s;
}

Session SessionStore::load(const std::string& id) const {
  const auto path = path_of(id);
  if (!valid_id(id) || !fs::exists(path)) {
    throw Error(ErrorCode::NotFound, "no session '" + id + "'", {{"id", id}});
  }
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return session_from_json(json::parse(buf.str()));
  } catch (const std::exception& e) {
    throw Error(ErrorCode::CorruptDocument,
                "session document '" + path.string() + "' is corrupt: " + e.what(),
                {{"path", path.string()}});
  }
}

std::vector<SessionSummary> SessionStore::list() const {
  std::vector<SessionSummary> out;
  for (const auto& entry : fs::directory_iterator(sessions_dir_)) {
    const auto name = entry.path().filename().string();
    if (!entry.is_regular_file() || name.front() == '.' || entry.path().extension() != ".json")
      continue;
    const auto s = load(entry.path().stem().string());
    out.push_back({s.id, s.created_at, s.updated_at, s.disorders.size(), s.revision});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.created_at, a.id) < std::tie(b.created_at, b.id);
  });
  return out;
}

Session SessionStore::update(const std::string& id, std::uint64_t expected_revision,
                             const Mutation& m) {
  if (!valid_id(id)) throw Error(ErrorCode::NotFound, "no session '" + id + "'", {{"id", id}});
  std::lock_guard guard(lock_for(id));
  const auto current = load(id);
  if (current.revision != expected_revision) {
    throw Error(ErrorCode::RevisionConflict,
                "session '" + id + "' is at revision " + std::to_string(current.revision) +
                    ", not " + std::to_string(expected_revision),
                {{"id", id},
                 {"expected_revision", expected_revision},
                 {"current_revision", current.revision}});
  }
  auto next = apply(current, m);
  next.revision = current.revision + 1;
  next.updated_at = utc_now();
  write(next);
  return next;
}

}  // namespace csa::store
