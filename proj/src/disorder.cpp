#include "csa/disorder.hpp"

#include "csa/error.hpp"

namespace csa {

DisorderSet::DisorderSet(std::vector<Disorder> disorders)
    : disorders_(std::move(disorders)) {
  if (disorders_.empty()) {
    throw Error(ErrorCode::InvalidDisorderSet, "disorder set must not be empty");
  }
  for (std::size_t i = 0; i < disorders_.size(); ++i) {
    const auto& id = disorders_[i].id;
    if (id.empty()) {
      throw Error(ErrorCode::InvalidDisorderSet, "disorder id must not be empty",
                  {{"index", i}});
    }
    if (!index_.emplace(id, i).second) {
      throw Error(ErrorCode::InvalidDisorderSet, "duplicate disorder id '" + id + "'",
                  {{"id", id}});
    }
  }
}

DisorderSet DisorderSet::from_ids(const std::vector<DisorderId>& ids) {
  std::vector<Disorder> disorders;
  disorders.reserve(ids.size());
  for (const auto& id : ids) disorders.push_back({id, id});
  return DisorderSet(std::move(disorders));
}

std::vector<DisorderId> DisorderSet::ids() const {
  std::vector<DisorderId> out;
  out.reserve(disorders_.size());
  for (const auto& d : disorders_) out.push_back(d.id);
  return out;
}

std::optional<std::size_t> DisorderSet::find(const DisorderId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t DisorderSet::index_of(const DisorderId& id) const {
  auto i = find(id);
  if (!i) {
    throw Error(ErrorCode::UnknownDisorder, "unknown disorder '" + id + "'",
                {{"id", id}});
  }
  return *i;
}

}  // namespace csa
