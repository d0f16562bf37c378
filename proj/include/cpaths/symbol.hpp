#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace cpaths {

/// Interned identifier. Two symbols compare equal iff their names do.
/// The intern table is process-wide and internally synchronized.
class Symbol {
 public:
  constexpr Symbol() = default;

  static Symbol intern(std::string_view name);

  const std::string& name() const;
  std::uint32_t id() const noexcept { return id_; }
  bool empty() const noexcept { return id_ == 0; }

  friend bool operator==(Symbol a, Symbol b) noexcept { return a.id_ == b.id_; }
  friend bool operator!=(Symbol a, Symbol b) noexcept { return a.id_ != b.id_; }

 private:
  explicit constexpr Symbol(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;  // 0 is the empty name
};

using PointId = Symbol;
using GenId = Symbol;

}  // namespace cpaths

template <>
struct std::hash<cpaths::Symbol> {
  std::size_t operator()(cpaths::Symbol s) const noexcept { return std::hash<std::uint32_t>{}(s.id()); }
};
