#include "gsm/node.hpp"

namespace gsm {

std::string node_label(NodeId n) {
  return (n.is_a() ? "a" : "b") + std::to_string(n.index + 1);
}

void NodeSet::insert(NodeId n) {
  auto& v = n.is_a() ? a_ : b_;
  auto& c = v[static_cast<std::size_t>(n.index)];
  if (c == 0) {
    c = 1;
    ++(n.is_a() ? na_ : nb_);
  }
}

void NodeSet::erase(NodeId n) {
  auto& v = n.is_a() ? a_ : b_;
  auto& c = v[static_cast<std::size_t>(n.index)];
  if (c != 0) {
    c = 0;
    --(n.is_a() ? na_ : nb_);
  }
}

std::vector<NodeId> NodeSet::members() const {
  std::vector<NodeId> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i] != 0) out.push_back(NodeId::a(static_cast<int>(i)));
  }
  for (std::size_t j = 0; j < b_.size(); ++j) {
    if (b_[j] != 0) out.push_back(NodeId::b(static_cast<int>(j)));
  }
  return out;
}

std::vector<int> NodeSet::a_members() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i] != 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> NodeSet::b_members() const {
  std::vector<int> out;
  for (std::size_t j = 0; j < b_.size(); ++j) {
    if (b_[j] != 0) out.push_back(static_cast<int>(j));
  }
  return out;
}

}  // namespace gsm
