#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "unialg/error.hpp"

namespace unialg {

using SymbolId = std::uint32_t;
using VarId = std::uint32_t;

/// Classification of interned symbols.  The binary product, the star
/// constant and the two direction constants are built in; alphabet, state
/// and position symbols are declared by the encodings that use them.
enum class SymbolKind : std::uint8_t {
  plain,
  product,    // the distinguished binary pairing symbol, written "." infix
  star,       // the distinguished constant "*"
  alphabet,   // input letters
  direction,  // exactly "l" and "r"
  state,      // machine states
  position,   // tape position constants
};

struct SymbolInfo {
  std::string name;
  int arity = 0;
  SymbolKind kind = SymbolKind::plain;
};

// Built-in symbol ids, identical in every session.
inline constexpr SymbolId kProductSym = 0;
inline constexpr SymbolId kStarSym = 1;
inline constexpr SymbolId kDirL = 2;
inline constexpr SymbolId kDirR = 3;

// Variable ids below the base are canonical variables (printed V1, V2, ...);
// ids at or above it index the session's named-variable table.
inline constexpr VarId kUserVarBase = 0x80000000u;

inline bool is_canonical_var(VarId v) { return v < kUserVarBase; }

/// Interning context shared by parsing, printing and the encodings.
/// Append-only: lookups may run concurrently, registration is serialized.
class Session {
 public:
  Session() {
    intern_symbol(".", 2, SymbolKind::product);
    intern_symbol("*", 0, SymbolKind::star);
    intern_symbol("l", 0, SymbolKind::direction);
    intern_symbol("r", 0, SymbolKind::direction);
  }

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  /// Returns the id for `name`, registering it on first use.  A name keeps
  /// one arity forever; re-registration with another arity fails.  A plain
  /// symbol may be upgraded once to a specific kind; conflicting specific
  /// kinds fail.
  SymbolId intern_symbol(const std::string& name, int arity,
                         SymbolKind kind = SymbolKind::plain) {
    std::unique_lock lock(mutex_);
    auto it = symbol_ids_.find(name);
    if (it == symbol_ids_.end()) {
      if (kind == SymbolKind::direction && name != "l" && name != "r")
        throw Error("only 'l' and 'r' may be direction symbols");
      SymbolId id = static_cast<SymbolId>(symbols_.size());
      symbols_.push_back(SymbolInfo{name, arity, kind});
      symbol_ids_.emplace(name, id);
      return id;
    }
    SymbolInfo& info = symbols_[it->second];
    if (info.arity != arity)
      throw Error("symbol '" + name + "' used with arity " +
                  std::to_string(arity) + " but registered with arity " +
                  std::to_string(info.arity));
    if (kind != SymbolKind::plain && kind != info.kind) {
      if (info.kind == SymbolKind::plain) {
        info.kind = kind;
      } else {
        throw Error("symbol '" + name + "' already registered with a different kind");
      }
    }
    return it->second;
  }

  std::optional<SymbolId> find_symbol(const std::string& name) const {
    std::shared_lock lock(mutex_);
    auto it = symbol_ids_.find(name);
    if (it == symbol_ids_.end()) return std::nullopt;
    return it->second;
  }

  /// Stable reference: symbols are never removed or moved.
  const SymbolInfo& symbol(SymbolId id) const {
    std::shared_lock lock(mutex_);
    if (id >= symbols_.size()) throw Error("unknown symbol id");
    return symbols_[id];
  }

  std::size_t symbol_count() const {
    std::shared_lock lock(mutex_);
    return symbols_.size();
  }

  /// All symbols of a given kind, in registration order.
  std::vector<SymbolId> symbols_of_kind(SymbolKind kind) const {
    std::shared_lock lock(mutex_);
    std::vector<SymbolId> out;
    for (SymbolId id = 0; id < symbols_.size(); ++id)
      if (symbols_[id].kind == kind) out.push_back(id);
    return out;
  }

  /// Named (non-canonical) variables.
  VarId intern_variable(const std::string& name) {
    std::unique_lock lock(mutex_);
    auto it = var_ids_.find(name);
    if (it != var_ids_.end()) return it->second;
    VarId id = kUserVarBase + static_cast<VarId>(var_names_.size());
    var_names_.push_back(name);
    var_ids_.emplace(name, id);
    return id;
  }

  std::string variable_name(VarId v) const {
    if (is_canonical_var(v)) return "V" + std::to_string(v + 1);
    std::shared_lock lock(mutex_);
    std::size_t idx = v - kUserVarBase;
    if (idx >= var_names_.size()) throw Error("unknown variable id");
    return var_names_[idx];
  }

 private:
  mutable std::shared_mutex mutex_;
  std::deque<SymbolInfo> symbols_;
  std::unordered_map<std::string, SymbolId> symbol_ids_;
  std::deque<std::string> var_names_;
  std::unordered_map<std::string, VarId> var_ids_;
};

}  // namespace unialg
