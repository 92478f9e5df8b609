#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "csa/disorder.hpp"
#include "csa/eigen_weighting.hpp"
#include "csa/order_relations.hpp"
#include "csa/trisection.hpp"

namespace csa::store {

inline constexpr int kSchemaVersion = 1;

struct ScaleSetting {
  std::vector<std::string> levels;
  weighting::ComparisonMatrix level_matrix;
  std::map<DisorderId, std::string> assignment;

  bool operator==(const ScaleSetting&) const = default;
};

struct Session {
  std::string id;
  std::string created_at;  // ISO 8601 UTC, seconds
  std::string updated_at;
  std::uint64_t revision = 0;
  DisorderSet disorders;
  std::vector<order::PairJudgment> judgments;
  std::optional<weighting::Hierarchy> hierarchy;
  std::optional<ScaleSetting> scale;
  std::optional<trisection::Params> trisection_params;
  std::string notes;

  bool operator==(const Session&) const = default;
};

nlohmann::json to_json(const Session& s);
/// Throws ParseError (or the engine error for invalid content).
Session session_from_json(const nlohmann::json& j);

struct SessionSummary {
  std::string id;
  std::string created_at;
  std::string updated_at;
  std::size_t disorder_count = 0;
  std::uint64_t revision = 0;
};

nlohmann::json to_json(const SessionSummary& s);

namespace mutation {
struct SetJudgments { std::vector<order::PairJudgment> judgments; };
/// Replaces any existing judgment on the same unordered pair.
struct AddJudgment { order::PairJudgment judgment; };
struct SetHierarchy { std::optional<weighting::Hierarchy> hierarchy; };
struct SetScale { std::optional<ScaleSetting> scale; };
struct SetTrisectionParams { std::optional<trisection::Params> params; };
struct SetNotes { std::string notes; };
}  // namespace mutation

using Mutation = std::variant<mutation::SetJudgments, mutation::AddJudgment,
                              mutation::SetHierarchy, mutation::SetScale,
                              mutation::SetTrisectionParams, mutation::SetNotes>;

/// Applies a mutation to a copy of the session. Throws ValidationFailure with
/// the underlying engine error code in the details.
Session apply(const Session& session, const Mutation& m);

/// Resolves the data directory: explicit flag, then CSA_DATA_DIR, then ./data.
std::filesystem::path resolve_data_dir(const std::optional<std::string>& flag);

/// One JSON document per session under <data_dir>/sessions/<id>.json.
/// Mutations to the same session are serialized; each commit writes a
/// temporary file and renames it over the previous revision.
class SessionStore {
 public:
  /// Creates the directory tree. Throws StorageFailure when it is unwritable.
  explicit SessionStore(std::filesystem::path data_dir);

  const std::filesystem::path& data_dir() const noexcept { return data_dir_; }

  Session create(const DisorderSet& disorders, std::string notes = {});
  /// Throws NotFound, CorruptDocument.
  Session load(const std::string& id) const;
  std::vector<SessionSummary> list() const;
  /// Throws NotFound, RevisionConflict, ValidationFailure, StorageFailure.
  Session update(const std::string& id, std::uint64_t expected_revision, const Mutation& m);

  std::filesystem::path path_of(const std::string& id) const;

 private:
  std::mutex& lock_for(const std::string& id);
  void write(const Session& s) const;

  std::filesystem::path data_dir_;
  std::filesystem::path sessions_dir_;
  std::mutex locks_guard_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_now();

}  // namespace csa::store
