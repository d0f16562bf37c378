#include "cpaths/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "cpaths/error.hpp"

namespace cpaths {

namespace {

struct InternTable {
  std::shared_mutex mutex;
  std::deque<std::string> names{std::string()};
  std::unordered_map<std::string_view, std::uint32_t> index{{std::string_view(), 0}};
};

InternTable& table() {
  static InternTable instance;
  return instance;
}

}  // namespace

Symbol Symbol::intern(std::string_view name) {
  auto& t = table();
  {
    std::shared_lock lock(t.mutex);
    if (auto it = t.index.find(name); it != t.index.end()) return Symbol(it->second);
  }
  std::unique_lock lock(t.mutex);
  if (auto it = t.index.find(name); it != t.index.end()) return Symbol(it->second);
  auto id = static_cast<std::uint32_t>(t.names.size());
  const std::string& stored = t.names.emplace_back(name);
  t.index.emplace(std::string_view(stored), id);
  return Symbol(id);
}

const std::string& Symbol::name() const {
  auto& t = table();
  std::shared_lock lock(t.mutex);
  // deque never relocates existing elements, so the reference outlives the lock
  return t.names[id_];
}

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownSpace: return "UnknownSpace";
    case ErrorKind::UnknownPoint: return "UnknownPoint";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::NotALoop: return "NotALoop";
    case ErrorKind::StepNotEnabled: return "StepNotEnabled";
    case ErrorKind::InvalidPosition: return "InvalidPosition";
    case ErrorKind::NotABasepointLoop: return "NotABasepointLoop";
    case ErrorKind::GroupTagMismatch: return "GroupTagMismatch";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::InvalidPresentation: return "InvalidPresentation";
    case ErrorKind::InvalidSpaceMap: return "InvalidSpaceMap";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace cpaths
