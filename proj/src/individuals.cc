#include "htdl/individuals.h"

#include <algorithm>

namespace htdl {

IndId IndividualPool::Add(IndividualInfo info) {
  IndId id = static_cast<IndId>(infos_.size());
  infos_.push_back(std::move(info));
  return id;
}

IndId IndividualPool::Named(const std::string& name) {
  auto it = named_.find(name);
  if (it != named_.end()) return it->second;
  IndividualInfo info;
  info.kind = IndividualKind::kNamed;
  info.text = name;
  IndId id = Add(std::move(info));
  named_.emplace(name, id);
  return id;
}

IndId IndividualPool::RootExt(IndId base, RoleRef role, ConceptId filler,
                              uint32_t index, const Vocabulary& vocab) {
  auto key = std::make_tuple(base, role, filler, index);
  auto it = root_ext_.find(key);
  if (it != root_ext_.end()) return it->second;
  IndividualInfo info;
  info.kind = IndividualKind::kRootExt;
  info.base = base;
  info.index = index;
  info.role = role;
  info.filler = filler;
  info.text = infos_[base].text + ".<" + vocab.RoleRefText(role) + "," +
              vocab.concept_entry(filler).text + "," + std::to_string(index) +
              ">";
  IndId id = Add(std::move(info));
  root_ext_.emplace(key, id);
  return id;
}

IndId IndividualPool::Blockable(IndId parent, uint32_t index) {
  auto key = std::make_pair(parent, index);
  auto it = blockable_.find(key);
  if (it != blockable_.end()) return it->second;
  IndividualInfo info;
  info.kind = IndividualKind::kBlockable;
  info.base = parent;
  info.index = index;
  info.text = infos_[parent].text + "." + std::to_string(index);
  info.tree_depth = infos_[parent].tree_depth + 1;
  IndId id = Add(std::move(info));
  infos_[parent].children.push_back(id);
  blockable_.emplace(key, id);
  return id;
}

std::optional<IndId> IndividualPool::FindNamed(const std::string& name) const {
  auto it = named_.find(name);
  if (it == named_.end()) return std::nullopt;
  return it->second;
}

std::optional<IndId> IndividualPool::FindRootExt(IndId base, RoleRef role,
                                                 ConceptId filler,
                                                 uint32_t index) const {
  auto it = root_ext_.find(std::make_tuple(base, role, filler, index));
  if (it == root_ext_.end()) return std::nullopt;
  return it->second;
}

bool IndividualPool::IsDescendant(IndId d, IndId of) const {
  for (IndId p = Parent(d); p != kNone; p = Parent(p)) {
    if (p == of) return true;
  }
  return false;
}

std::vector<IndId> IndividualPool::Descendants(IndId of) const {
  std::vector<IndId> out;
  std::vector<IndId> stack(infos_[of].children.begin(),
                           infos_[of].children.end());
  while (!stack.empty()) {
    IndId d = stack.back();
    stack.pop_back();
    out.push_back(d);
    stack.insert(stack.end(), infos_[d].children.begin(),
                 infos_[d].children.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace htdl
