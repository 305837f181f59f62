#include "fabula/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace fabula {
namespace {

struct SymbolTable {
  std::shared_mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, SymbolId> ids;
};

SymbolTable& table() {
  static SymbolTable instance;
  return instance;
}

}  // namespace

SymbolId intern(std::string_view name) {
  auto& t = table();
  {
    std::shared_lock lock(t.mutex);
    auto it = t.ids.find(std::string(name));
    if (it != t.ids.end()) return it->second;
  }
  std::unique_lock lock(t.mutex);
  auto [it, inserted] = t.ids.emplace(std::string(name), static_cast<SymbolId>(t.names.size()));
  if (inserted) t.names.emplace_back(name);
  return it->second;
}

const std::string& symbol_name(SymbolId id) {
  auto& t = table();
  std::shared_lock lock(t.mutex);
  if (id >= t.names.size()) throw std::out_of_range("unknown symbol id");
  return t.names[id];
}

}  // namespace fabula
