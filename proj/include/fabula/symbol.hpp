#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace fabula {

// Interned identifier. Ids are assigned in first-seen order, so any ordering
// built on them is deterministic for a given input sequence.
using SymbolId = std::uint32_t;

SymbolId intern(std::string_view name);
const std::string& symbol_name(SymbolId id);

}  // namespace fabula
