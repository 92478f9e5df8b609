#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace csa {

using DisorderId = std::string;

struct Disorder {
  DisorderId id;
  std::string label;

  bool operator==(const Disorder&) const = default;
};

/// The universe of candidate disorders under diagnosis. Insertion order is
/// the canonical tie-break order everywhere in the engine.
class DisorderSet {
 public:
  DisorderSet() = default;

  /// Throws InvalidDisorderSet when empty, when an id is empty or repeated.
  explicit DisorderSet(std::vector<Disorder> disorders);

  /// Convenience: ids double as labels.
  static DisorderSet from_ids(const std::vector<DisorderId>& ids);

  std::size_t size() const noexcept { return disorders_.size(); }
  bool empty() const noexcept { return disorders_.empty(); }

  const Disorder& operator[](std::size_t i) const { return disorders_[i]; }
  const std::vector<Disorder>& disorders() const noexcept { return disorders_; }
  std::vector<DisorderId> ids() const;

  std::optional<std::size_t> find(const DisorderId& id) const;
  bool contains(const DisorderId& id) const { return find(id).has_value(); }

  /// Throws UnknownDisorder.
  std::size_t index_of(const DisorderId& id) const;

  bool operator==(const DisorderSet& other) const {
    return disorders_ == other.disorders_;
  }

 private:
  std::vector<Disorder> disorders_;
  std::unordered_map<DisorderId, std::size_t> index_;
};

}  // namespace csa
