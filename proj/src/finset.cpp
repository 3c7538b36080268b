#include "llmk/finset.hpp"

#include <set>

namespace llmk {

FinSet::FinSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw std::invalid_argument("duplicate point label");
}

FinSet FinSet::singleton() { return FinSet({"()"}); }

FinSet FinSet::product(const FinSet& a, const FinSet& b, std::size_t max_index) {
  if (a.size() * b.size() > max_index) {
    throw ResourceError("index set of size " + std::to_string(a.size() * b.size()) +
                        " exceeds the cap of " + std::to_string(max_index));
  }
  FinSet out;
  out.labels_.reserve(a.size() * b.size());
  for (const auto& x : a.labels_) {
    for (const auto& y : b.labels_) out.labels_.push_back("(" + x + "," + y + ")");
  }
  return out;
}

FinSet FinSet::product(const std::vector<FinSet>& factors, std::size_t max_index) {
  if (factors.empty()) return singleton();
  if (factors.size() == 1) return factors.front();
  std::size_t total = 1;
  for (const auto& f : factors) {
    total *= f.size();
    if (total > max_index) {
      throw ResourceError("context index set exceeds the cap of " + std::to_string(max_index));
    }
  }
  // Labels are built as tuples "(a,b,c)".
  std::vector<std::vector<std::string>> acc{{}};
  for (const auto& f : factors) {
    std::vector<std::vector<std::string>> next;
    next.reserve(acc.size() * f.size());
    for (const auto& prefix : acc) {
      for (const auto& l : f.labels_) {
        auto row = prefix;
        row.push_back(l);
        next.push_back(std::move(row));
      }
    }
    acc = std::move(next);
  }
  FinSet out;
  out.labels_.reserve(acc.size());
  for (const auto& row : acc) {
    std::string s = "(";
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ",";
      s += row[i];
    }
    out.labels_.push_back(s + ")");
  }
  return out;
}

std::optional<std::size_t> FinSet::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

FinSet points(const MkTypePtr& type, const BaseTable& bases, std::size_t max_index) {
  switch (type->kind) {
    case MkType::Kind::Unit: return FinSet::singleton();
    case MkType::Kind::Base: {
      auto it = bases.find(type->name);
      if (it == bases.end()) throw std::out_of_range("unknown base type '" + type->name + "'");
      return FinSet(it->second);
    }
    case MkType::Kind::Prod:
      return FinSet::product(points(type->left, bases, max_index),
                             points(type->right, bases, max_index), max_index);
  }
  return FinSet::singleton();
}

FinSet web_index(const LlTypePtr& type, const BaseTable& bases, std::size_t max_index) {
  switch (type->kind) {
    case LlType::Kind::Unit: return FinSet::singleton();
    case LlType::Kind::Meas: return points(type->inner, bases, max_index);
    case LlType::Kind::Lolli:
    case LlType::Kind::Tensor:
      return FinSet::product(web_index(type->left, bases, max_index),
                             web_index(type->right, bases, max_index), max_index);
  }
  return FinSet::singleton();
}

}  // namespace llmk
