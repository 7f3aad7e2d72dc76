#pragma once

#include <compare>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace coha {

enum class VarKind : std::uint8_t {
  TorusSlot = 0,
  EdgeWeightParam = 1,
  FramingParam = 2,
  HbarParam = 3,
  SeriesVar = 4,
};

// Packed variable key.  For unnamed kinds the numeric order of the key is the
// canonical order; named kinds fall back to comparing the names.
using VarId = std::uint64_t;

namespace detail {

class NameTable {
 public:
  std::uint32_t intern(const std::string& s) {
    {
      std::shared_lock lk(mu_);
      auto it = index_.find(s);
      if (it != index_.end()) return it->second;
    }
    std::unique_lock lk(mu_);
    auto it = index_.find(s);
    if (it != index_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.push_back(s);
    index_.emplace(s, id);
    return id;
  }
  std::string name(std::uint32_t i) const {
    std::shared_lock lk(mu_);
    if (i >= names_.size()) throw std::out_of_range("unknown name index");
    return names_[i];
  }
  int compare(std::uint32_t a, std::uint32_t b) const {
    if (a == b) return 0;
    std::shared_lock lk(mu_);
    int c = names_.at(a).compare(names_.at(b));
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }

 private:
  mutable std::shared_mutex mu_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

inline NameTable& names() {
  static NameTable t;
  return t;
}

constexpr int kKindShift = 60;
constexpr VarId kLow32 = 0xffffffffULL;

}  // namespace detail

inline VarKind kind_of(VarId v) { return static_cast<VarKind>(v >> detail::kKindShift); }

inline bool is_named_kind(VarKind k) {
  return k == VarKind::EdgeWeightParam || k == VarKind::SeriesVar;
}

struct Variable {
  VarKind kind = VarKind::TorusSlot;
  int vertex = 0;
  int tag = 0;
  int index = 0;
  std::string name;

  static Variable torus(int vertex, int tag, int index) {
    return {VarKind::TorusSlot, vertex, tag, index, {}};
  }
  static Variable edge_param(std::string n) { return {VarKind::EdgeWeightParam, 0, 0, 0, std::move(n)}; }
  static Variable framing(int vertex, int index) { return {VarKind::FramingParam, vertex, 0, index, {}}; }
  static Variable hbar() { return {VarKind::HbarParam, 0, 0, 0, {}}; }
  static Variable series(std::string n) { return {VarKind::SeriesVar, 0, 0, 0, std::move(n)}; }

  VarId id() const {
    VarId k = static_cast<VarId>(kind) << detail::kKindShift;
    switch (kind) {
      case VarKind::TorusSlot:
        if (vertex < 0 || vertex >= (1 << 24) || tag < 0 || tag > 15 || index < 0)
          throw std::invalid_argument("torus slot out of range");
        return k | (static_cast<VarId>(vertex) << 36) | (static_cast<VarId>(tag) << 32) |
               static_cast<VarId>(static_cast<std::uint32_t>(index));
      case VarKind::FramingParam:
        if (vertex < 0 || vertex >= (1 << 24) || index < 0)
          throw std::invalid_argument("framing slot out of range");
        return k | (static_cast<VarId>(vertex) << 32) | static_cast<VarId>(static_cast<std::uint32_t>(index));
      case VarKind::HbarParam:
        return k;
      case VarKind::EdgeWeightParam:
      case VarKind::SeriesVar:
        return k | detail::names().intern(name);
    }
    return k;
  }

  static Variable from_id(VarId v) {
    Variable r;
    r.kind = kind_of(v);
    switch (r.kind) {
      case VarKind::TorusSlot:
        r.vertex = static_cast<int>((v >> 36) & 0xffffff);
        r.tag = static_cast<int>((v >> 32) & 0xf);
        r.index = static_cast<int>(v & detail::kLow32);
        break;
      case VarKind::FramingParam:
        r.vertex = static_cast<int>((v >> 32) & 0xffffff);
        r.index = static_cast<int>(v & detail::kLow32);
        break;
      case VarKind::HbarParam:
        break;
      case VarKind::EdgeWeightParam:
      case VarKind::SeriesVar:
        r.name = detail::names().name(static_cast<std::uint32_t>(v & detail::kLow32));
        break;
    }
    return r;
  }

  friend auto operator<=>(const Variable&, const Variable&) = default;
  friend bool operator==(const Variable&, const Variable&) = default;
};

inline VarId var_id(const Variable& v) { return v.id(); }
inline VarId torus_var(int vertex, int tag, int index) { return Variable::torus(vertex, tag, index).id(); }
inline VarId param_var(const std::string& n) { return Variable::edge_param(n).id(); }
inline VarId framing_var(int vertex, int index) { return Variable::framing(vertex, index).id(); }
inline VarId hbar_var() { return Variable::hbar().id(); }
inline VarId series_var(const std::string& n) { return Variable::series(n).id(); }

// Canonical order (kind, then ids, then indices, names alphabetically).
inline int var_compare(VarId a, VarId b) {
  if (a == b) return 0;
  VarKind ka = kind_of(a), kb = kind_of(b);
  if (ka == kb && is_named_kind(ka))
    return detail::names().compare(static_cast<std::uint32_t>(a & detail::kLow32),
                                   static_cast<std::uint32_t>(b & detail::kLow32));
  return a < b ? -1 : 1;
}

inline bool var_less(VarId a, VarId b) { return var_compare(a, b) < 0; }

}  // namespace coha
