#include "jb/diffpoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace jb {

// ---------------------------------------------------------------- MultiIndex

static void compositions(size_t n, int d, MultiIndex& cur, size_t pos,
                         std::vector<MultiIndex>& out) {
    if (pos + 1 == n) {
        cur[pos] = d;
        out.push_back(cur);
        cur[pos] = 0;
        return;
    }
    for (int a = 0; a <= d; ++a) {
        cur[pos] = a;
        compositions(n, d - a, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

std::vector<MultiIndex> multiindices_of_order(size_t n, int d) {
    std::vector<MultiIndex> out;
    if (d < 0)
        return out;
    MultiIndex cur(n);
    compositions(n, d, cur, 0, out);
    return out;
}

std::vector<MultiIndex> multiindices_up_to(size_t n, int d) {
    std::vector<MultiIndex> out;
    for (int k = 0; k <= d; ++k) {
        auto part = multiindices_of_order(n, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

// ------------------------------------------------------------------ Universe

UniversePtr Universe::create(std::vector<std::string> base_names) {
    auto u = UniversePtr(new Universe());
    for (size_t i = 0; i < base_names.size(); ++i)
        for (size_t j = i + 1; j < base_names.size(); ++j)
            if (base_names[i] == base_names[j])
                throw error("duplicate base variable " + base_names[i]);
    u->base_names_ = std::move(base_names);
    return u;
}

bool Universe::jet_key_less(const std::pair<size_t, MultiIndex>& a,
                            const std::pair<size_t, MultiIndex>& b) {
    if (a.first != b.first)
        return a.first < b.first;
    return graded_lex_less(a.second, b.second);
}

size_t Universe::declare_symbol(const std::string& name, SymbolKind kind) {
    if (find_symbol(name) || find_base(name))
        throw error("name already declared: " + name);
    Symbol s;
    s.name = name;
    s.kind = kind;
    symbols_.push_back(std::move(s));
    symbol_by_name_[name] = symbols_.size() - 1;
    return symbols_.size() - 1;
}

void Universe::open_rule(size_t s, size_t dir) {
    symbols_[s].rules[dir] = nullptr;
}

void Universe::install_rule(size_t s, size_t dir, const DiffPoly& value) {
    symbols_[s].rules[dir] = std::make_shared<const DiffPoly>(value);
}

bool Universe::has_rule(size_t s, size_t dir) const {
    return symbols_[s].rules.count(dir) != 0;
}

const DiffPoly* Universe::rule(size_t s, size_t dir) const {
    auto it = symbols_[s].rules.find(dir);
    if (it == symbols_[s].rules.end())
        return nullptr;
    return it->second.get();
}

size_t Universe::declare_inverse(const DiffPoly& of) {
    std::string key = of.str();
    for (size_t s = 0; s < symbols_.size(); ++s)
        if (symbols_[s].kind == SymbolKind::Inverse && symbols_[s].inverse_of->str() == key)
            return s;
    size_t count = 0;
    for (auto& s : symbols_)
        if (s.kind == SymbolKind::Inverse)
            ++count;
    std::string name = "inv_" + std::to_string(count + 1);
    while (find_symbol(name) || find_base(name))
        name += "_";
    size_t s = declare_symbol(name, SymbolKind::Inverse);
    symbols_[s].inverse_of = std::make_shared<const DiffPoly>(of);
    return s;
}

std::optional<size_t> Universe::find_symbol(const std::string& name) const {
    auto it = symbol_by_name_.find(name);
    if (it == symbol_by_name_.end())
        return std::nullopt;
    return it->second;
}

std::optional<size_t> Universe::find_base(const std::string& name) const {
    for (size_t i = 0; i < base_names_.size(); ++i)
        if (base_names_[i] == name)
            return i;
    return std::nullopt;
}

uint32_t Universe::intern(VarInfo info) const {
    vars_.push_back(std::move(info));
    return static_cast<uint32_t>(vars_.size() - 1);
}

uint32_t Universe::base_var(size_t i) const {
    if (base_var_ids_.size() <= i)
        base_var_ids_.resize(base_names_.size(), UINT32_MAX);
    if (base_var_ids_[i] == UINT32_MAX) {
        VarInfo v;
        v.kind = VarKind::Base;
        v.base_index = i;
        v.name = base_names_[i];
        v.rank = {1, static_cast<long>(i)};
        base_var_ids_[i] = intern(std::move(v));
    }
    return base_var_ids_[i];
}

uint32_t Universe::jet_var(size_t symbol, const MultiIndex& idx) const {
    auto key = std::make_pair(symbol, idx);
    auto it = jet_ids_.find(key);
    if (it != jet_ids_.end())
        return it->second;
    VarInfo v;
    v.kind = VarKind::Jet;
    v.symbol = symbol;
    v.index = idx;
    const Symbol& sym = symbols_[symbol];
    v.name = sym.name;
    if (!idx.is_zero())
        v.name += idx.str();
    if (sym.kind == SymbolKind::Inverse) {
        if (!idx.is_zero())
            throw error("inverse symbol cannot carry a jet index: " + v.name);
        v.rank = {0, static_cast<long>(symbol)};
    } else {
        v.rank = {2, static_cast<long>(symbol), -static_cast<long>(idx.order())};
        for (size_t i = 0; i < idx.size(); ++i)
            v.rank.push_back(-static_cast<long>(idx[i]));
    }
    uint32_t id = intern(std::move(v));
    jet_ids_.emplace(key, id);
    return id;
}

// ------------------------------------------------------------------ Monomial

int mono_cmp(const Universe& u, const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db)
        return da < db ? -1 : 1;
    // Graded reverse lex: walk from the least significant end; at the least
    // significant difference, the smaller exponent belongs to the larger
    // monomial.
    auto ia = a.f.rbegin(), ib = b.f.rbegin();
    while (ia != a.f.rend() && ib != b.f.rend()) {
        uint32_t va = ia->first, vb = ib->first;
        if (va == vb) {
            if (ia->second != ib->second)
                return ia->second > ib->second ? -1 : 1;
            ++ia;
            ++ib;
        } else if (u.more_significant(vb, va)) {
            // a holds the less significant variable, so a is smaller
            return -1;
        } else {
            return 1;
        }
    }
    // Equal degrees force simultaneous exhaustion.
    return 0;
}

Monomial mono_mul(const Universe& u, const Monomial& a, const Monomial& b) {
    Monomial r;
    r.f.reserve(a.f.size() + b.f.size());
    auto ia = a.f.begin(), ib = b.f.begin();
    while (ia != a.f.end() || ib != b.f.end()) {
        if (ib == b.f.end() || (ia != a.f.end() && ia->first != ib->first &&
                                u.more_significant(ia->first, ib->first))) {
            r.f.push_back(*ia++);
        } else if (ia == a.f.end() || ia->first != ib->first) {
            r.f.push_back(*ib++);
        } else {
            r.f.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    return r;
}

Monomial mono_div(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (auto& [v, e] : a.f) {
        uint32_t d = b.exponent(v);
        if (e > d)
            r.f.emplace_back(v, e - d);
    }
    return r;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
    for (auto& [v, e] : a.f)
        if (b.exponent(v) < e)
            return false;
    return true;
}

Monomial mono_lcm(const Universe& u, const Monomial& a, const Monomial& b) {
    Monomial r;
    auto ia = a.f.begin(), ib = b.f.begin();
    while (ia != a.f.end() || ib != b.f.end()) {
        if (ib == b.f.end() || (ia != a.f.end() && ia->first != ib->first &&
                                u.more_significant(ia->first, ib->first))) {
            r.f.push_back(*ia++);
        } else if (ia == a.f.end() || ia->first != ib->first) {
            r.f.push_back(*ib++);
        } else {
            r.f.emplace_back(ia->first, std::max(ia->second, ib->second));
            ++ia;
            ++ib;
        }
    }
    return r;
}

// ------------------------------------------------------------------ DiffPoly

DiffPoly DiffPoly::constant(UniversePtr u, const Q& c) {
    DiffPoly p(std::move(u));
    if (c != 0)
        p.t_.push_back({Monomial{}, c});
    return p;
}

DiffPoly DiffPoly::variable(UniversePtr u, uint32_t var) {
    DiffPoly p(std::move(u));
    Monomial m;
    m.f.emplace_back(var, 1);
    p.t_.push_back({std::move(m), Q(1)});
    return p;
}

DiffPoly DiffPoly::base(UniversePtr u, size_t i) {
    uint32_t v = u->base_var(i);
    return variable(std::move(u), v);
}

DiffPoly DiffPoly::jet(UniversePtr u, size_t symbol, const MultiIndex& idx, int depth) {
    if (depth > 64)
        throw rule_cycle("parameter rule expansion exceeded depth 64 at " +
                         u->symbols()[symbol].name);
    const Symbol& sym = u->symbols()[symbol];
    if (sym.kind == SymbolKind::Parameter) {
        for (size_t dir = 0; dir < u->dim(); ++dir) {
            if (idx[dir] > 0 && u->has_rule(symbol, dir)) {
                DiffPoly inner = jet(u, symbol, idx.minus(dir), depth + 1);
                return total_derivative(inner, dir, depth + 1);
            }
        }
    }
    uint32_t v = u->jet_var(symbol, idx);
    return variable(std::move(u), v);
}

const DiffPoly::Term& DiffPoly::leading() const {
    if (t_.empty())
        throw error("leading term of zero polynomial");
    return t_[0];
}

int DiffPoly::degree() const {
    int d = -1;
    for (auto& t : t_)
        d = std::max(d, t.m.degree());
    return d;
}

void DiffPoly::check_same(const DiffPoly& o) const {
    if (uni_ != o.uni_)
        throw universe_mismatch("operands from different universes");
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r(uni_);
    r.t_ = t_;
    for (auto& t : r.t_)
        t.c = -t.c;
    return r;
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
    check_same(o);
    DiffPoly r(uni_);
    r.t_.reserve(t_.size() + o.t_.size());
    auto ia = t_.begin(), ib = o.t_.begin();
    while (ia != t_.end() || ib != o.t_.end()) {
        if (ib == o.t_.end()) {
            r.t_.push_back(*ia++);
        } else if (ia == t_.end()) {
            r.t_.push_back(*ib++);
        } else {
            int c = mono_cmp(*uni_, ia->m, ib->m);
            if (c > 0) {
                r.t_.push_back(*ia++);
            } else if (c < 0) {
                r.t_.push_back(*ib++);
            } else {
                Q s = ia->c + ib->c;
                if (s != 0)
                    r.t_.push_back({ia->m, std::move(s)});
                ++ia;
                ++ib;
            }
        }
    }
    return r;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const {
    return *this + (-o);
}

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
    check_same(o);
    auto cmp = [this](const Monomial& a, const Monomial& b) {
        return mono_cmp(*uni_, a, b) > 0; // descending
    };
    std::map<Monomial, Q, decltype(cmp)> acc(cmp);
    for (auto& ta : t_)
        for (auto& tb : o.t_) {
            Monomial m = mono_mul(*uni_, ta.m, tb.m);
            acc[std::move(m)] += ta.c * tb.c;
        }
    DiffPoly r(uni_);
    for (auto& [m, c] : acc)
        if (c != 0)
            r.t_.push_back({m, c});
    return r;
}

DiffPoly DiffPoly::operator*(const Q& c) const {
    DiffPoly r(uni_);
    if (c == 0)
        return r;
    r.t_ = t_;
    for (auto& t : r.t_)
        t.c *= c;
    return r;
}

DiffPoly DiffPoly::pow(int k) const {
    if (k < 0)
        throw error("negative exponent");
    DiffPoly r = constant(uni_, 1);
    for (int i = 0; i < k; ++i)
        r = r * *this;
    return r;
}

bool DiffPoly::operator==(const DiffPoly& o) const {
    check_same(o);
    if (t_.size() != o.t_.size())
        return false;
    for (size_t i = 0; i < t_.size(); ++i)
        if (t_[i].c != o.t_[i].c || t_[i].m != o.t_[i].m)
            return false;
    return true;
}

DiffPoly DiffPoly::partial(uint32_t var) const {
    DiffPoly r(uni_);
    std::vector<Term> terms;
    for (auto& t : t_) {
        uint32_t e = t.m.exponent(var);
        if (e == 0)
            continue;
        Monomial m;
        for (auto& [v, ee] : t.m.f) {
            if (v == var) {
                if (ee > 1)
                    m.f.emplace_back(v, ee - 1);
            } else {
                m.f.emplace_back(v, ee);
            }
        }
        terms.push_back({std::move(m), t.c * Q(static_cast<long>(e))});
    }
    return from_terms(uni_, std::move(terms));
}

DiffPoly DiffPoly::from_terms(UniversePtr u, std::vector<Term> terms) {
    auto cmp = [&u](const Monomial& a, const Monomial& b) {
        return mono_cmp(*u, a, b) > 0;
    };
    std::map<Monomial, Q, decltype(cmp)> acc(cmp);
    for (auto& t : terms)
        acc[t.m] += t.c;
    DiffPoly r(u);
    for (auto& [m, c] : acc)
        if (c != 0)
            r.t_.push_back({m, c});
    return r;
}

// Derivative of a single interned variable under D_dir.
static DiffPoly var_derivative(const UniversePtr& u, uint32_t var, size_t dir, int depth) {
    const VarInfo& v = u->var(var);
    if (v.kind == VarKind::Base)
        return DiffPoly::constant(u, v.base_index == dir ? 1 : 0);
    const Symbol& sym = u->symbols()[v.symbol];
    switch (sym.kind) {
    case SymbolKind::Unknown:
        return DiffPoly::jet(u, v.symbol, v.index.plus(dir), depth);
    case SymbolKind::Parameter: {
        if (!u->has_rule(v.symbol, dir))
            return DiffPoly::jet(u, v.symbol, v.index.plus(dir), depth);
        const DiffPoly* r = u->rule(v.symbol, dir);
        if (!r)
            throw rule_cycle("rule for " + sym.name + "/" + u->base_names()[dir] +
                             " referenced while still being defined");
        // The jet index holds ruleless directions only; push it through the rule.
        if (v.index.is_zero())
            return *r;
        return total_derivative_multi(*r, v.index, depth + 1);
    }
    case SymbolKind::Inverse: {
        // d(1/q) = -(1/q)^2 dq, kept polynomial in the inverse symbol.
        DiffPoly t = DiffPoly::variable(u, var);
        DiffPoly dq = total_derivative(*sym.inverse_of, dir, depth + 1);
        return -(t * t * dq);
    }
    }
    throw error("unreachable");
}

DiffPoly total_derivative(const DiffPoly& p, size_t dir, int depth) {
    if (depth > 64)
        throw rule_cycle("total derivative recursion exceeded depth 64");
    const UniversePtr& u = p.universe();
    if (!u)
        throw error("total derivative of uninitialized polynomial");
    if (dir >= u->dim())
        throw error("direction out of range");
    DiffPoly sum(u);
    for (auto& t : p.terms()) {
        for (size_t k = 0; k < t.m.f.size(); ++k) {
            auto [v, e] = t.m.f[k];
            Monomial rest;
            for (size_t j = 0; j < t.m.f.size(); ++j) {
                auto [vj, ej] = t.m.f[j];
                uint32_t keep = (j == k) ? ej - 1 : ej;
                if (keep > 0)
                    rest.f.emplace_back(vj, keep);
            }
            DiffPoly piece = DiffPoly::from_terms(u, {{rest, t.c * Q(static_cast<long>(e))}});
            sum = sum + piece * var_derivative(u, v, dir, depth);
        }
    }
    return sum;
}

DiffPoly total_derivative_multi(const DiffPoly& p, const MultiIndex& tau, int depth) {
    DiffPoly r = p;
    for (size_t dir = 0; dir < tau.size(); ++dir)
        for (int k = 0; k < tau[dir]; ++k)
            r = total_derivative(r, dir, depth);
    return r;
}

int order(const DiffPoly& p) {
    if (p.is_zero())
        throw undefined_order("order of the zero polynomial is undefined");
    const UniversePtr& u = p.universe();
    int ord = 0;
    for (auto& t : p.terms())
        for (auto& [v, e] : t.m.f) {
            const VarInfo& info = u->var(v);
            if (info.kind == VarKind::Jet &&
                u->symbols()[info.symbol].kind == SymbolKind::Unknown)
                ord = std::max(ord, info.index.order());
        }
    return ord;
}

Q evaluate(const DiffPoly& p, const std::function<Q(uint32_t)>& value) {
    Q sum = 0;
    for (auto& t : p.terms()) {
        Q prod = t.c;
        for (auto& [v, e] : t.m.f) {
            Q x = value(v);
            for (uint32_t k = 0; k < e; ++k)
                prod *= x;
        }
        sum += prod;
    }
    return sum;
}

std::string DiffPoly::str() const {
    if (t_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : t_) {
        Q c = t.c;
        bool neg = c < 0;
        if (first) {
            if (neg)
                os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        Q a = neg ? Q(-c) : c;
        if (t.m.is_one()) {
            os << a.get_str();
        } else {
            bool coeff = (a != 1);
            if (coeff)
                os << a.get_str();
            bool need_star = coeff;
            for (auto& [v, e] : t.m.f) {
                if (need_star)
                    os << "*";
                os << uni_->var(v).name;
                if (e > 1)
                    os << "^" << e;
                need_star = true;
            }
        }
    }
    return os.str();
}

} // namespace jb
