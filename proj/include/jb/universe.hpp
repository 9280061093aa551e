// The symbol universe: base variables x^1..x^n, declared symbols (unknowns,
// parameters, inverse markers), and the interning table that maps each
// concrete variable (a base variable or a jet of a symbol) to a stable id.
//
// Interning is append-only, so polynomials stay valid as new jet variables
// come into existence, and the canonical variable ranking of a variable never
// changes after it is created. Two polynomials may be combined only when they
// share one Universe object; structural equality is not enough.
#ifndef JB_UNIVERSE_HPP
#define JB_UNIVERSE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jb/multiindex.hpp"

namespace jb {

class DiffPoly;
class Universe;
using UniversePtr = std::shared_ptr<Universe>;

enum class SymbolKind {
    Unknown,   // a dependent variable of the PDE system
    Parameter, // a coefficient symbol, possibly with derivative rules
    Inverse,   // reciprocal of a declared invertible, never differentiated formally
};

struct Symbol {
    std::string name;
    SymbolKind kind;
    // Derivative rules per base direction. A present entry with a null poly is
    // a rule whose right-hand side is still being parsed; referencing it then
    // is an ill-founded cycle.
    std::map<size_t, std::shared_ptr<const DiffPoly>> rules;
    // For Inverse symbols: the invertible expression this symbol inverts.
    std::shared_ptr<const DiffPoly> inverse_of;
};

enum class VarKind { Base, Jet };

struct VarInfo {
    VarKind kind;
    size_t base_index = 0;  // for Base
    size_t symbol = 0;      // for Jet: index into symbols()
    MultiIndex index;       // for Jet
    std::string name;       // printable form
    // Significance key; lexicographically smaller = more significant in the
    // monomial order. Inverse symbols outrank base variables outrank jets;
    // jets rank by (symbol declaration order, then higher graded-lex index
    // first within one symbol).
    std::vector<long> rank;
};

class Universe : public std::enable_shared_from_this<Universe> {
public:
    static UniversePtr create(std::vector<std::string> base_names);

    size_t dim() const { return base_names_.size(); }
    const std::vector<std::string>& base_names() const { return base_names_; }
    const std::vector<Symbol>& symbols() const { return symbols_; }

    size_t declare_symbol(const std::string& name, SymbolKind kind);
    // Marks direction `dir` of symbol `s` as ruled, with the value to be
    // installed later; see Symbol::rules.
    void open_rule(size_t s, size_t dir);
    void install_rule(size_t s, size_t dir, const DiffPoly& value);
    bool has_rule(size_t s, size_t dir) const;
    const DiffPoly* rule(size_t s, size_t dir) const; // null while pending

    // Declare an inverse symbol for the given invertible expression; returns
    // its symbol index. Idempotent per expression (by canonical printing).
    size_t declare_inverse(const DiffPoly& of);

    std::optional<size_t> find_symbol(const std::string& name) const;
    std::optional<size_t> find_base(const std::string& name) const;

    // Variable interning.
    uint32_t base_var(size_t i) const;
    uint32_t jet_var(size_t symbol, const MultiIndex& idx) const;
    const VarInfo& var(uint32_t id) const { return vars_[id]; }
    size_t var_count() const { return vars_.size(); }

    // True when `a` is strictly more significant than `b` in the ranking.
    bool more_significant(uint32_t a, uint32_t b) const {
        return vars_[a].rank < vars_[b].rank;
    }

private:
    Universe() = default;

    std::vector<std::string> base_names_;
    std::vector<Symbol> symbols_;
    std::map<std::string, size_t> symbol_by_name_;

    mutable std::vector<VarInfo> vars_;
    mutable std::vector<uint32_t> base_var_ids_;
    mutable std::map<std::pair<size_t, MultiIndex>, uint32_t,
                     bool (*)(const std::pair<size_t, MultiIndex>&,
                              const std::pair<size_t, MultiIndex>&)>
        jet_ids_{&Universe::jet_key_less};

    static bool jet_key_less(const std::pair<size_t, MultiIndex>& a,
                             const std::pair<size_t, MultiIndex>& b);
    uint32_t intern(VarInfo info) const;
};

} // namespace jb

#endif
