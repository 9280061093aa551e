#include "jb/groebner.hpp"

#include <algorithm>

#include "jb/errors.hpp"

namespace jb {

std::vector<DiffPoly> inverse_relations(const UniversePtr& u) {
    std::vector<DiffPoly> rel;
    const auto& syms = u->symbols();
    for (size_t s = 0; s < syms.size(); ++s) {
        if (syms[s].kind != SymbolKind::Inverse)
            continue;
        DiffPoly t = DiffPoly::jet(u, s, MultiIndex(u->dim()));
        rel.push_back(t * (*syms[s].inverse_of) - DiffPoly::constant(u, 1));
    }
    return rel;
}

namespace {

DiffPoly mono_times(const UniversePtr& u, const Monomial& m, const Q& c,
                    const DiffPoly& f) {
    std::vector<DiffPoly::Term> ts;
    ts.push_back({m, c});
    return DiffPoly::from_terms(u, std::move(ts)) * f;
}

bool coprime(const Monomial& a, const Monomial& b) {
    for (const auto& [v, e] : a.f)
        if (b.exponent(v) != 0)
            return false;
    return true;
}

} // namespace

DiffPoly GroebnerBasis::reduce(const DiffPoly& f, const std::vector<DiffPoly>& gens) const {
    DiffPoly rest = f;
    std::vector<DiffPoly::Term> remainder;
    while (!rest.is_zero()) {
        if (rest.degree() > budget_.max_degree)
            throw budget_exceeded("reduction exceeded the degree budget");
        const auto& lt = rest.leading();
        bool hit = false;
        for (const auto& g : gens) {
            const auto& glt = g.leading();
            if (!mono_divides(glt.m, lt.m))
                continue;
            Monomial q = mono_div(lt.m, glt.m);
            rest = rest - mono_times(uni_, q, lt.c / glt.c, g);
            hit = true;
            break;
        }
        if (!hit) {
            remainder.push_back(lt);
            rest = rest - DiffPoly::from_terms(uni_, {lt});
        }
    }
    return DiffPoly::from_terms(uni_, std::move(remainder));
}

GroebnerBasis::GroebnerBasis(UniversePtr u, std::vector<DiffPoly> gens, Budget budget)
    : uni_(std::move(u)), budget_(budget) {
    // Seed the working basis with nonzero, monic, deduplicated generators.
    for (auto& f : gens) {
        if (f.is_zero())
            continue;
        DiffPoly m = f * (Q(1) / f.leading().c);
        if (std::find(g_.begin(), g_.end(), m) == g_.end())
            g_.push_back(std::move(m));
    }

    struct Pair {
        size_t i, j;
        int lcm_degree;
        size_t stamp;
    };
    std::vector<Pair> queue;
    size_t stamp = 0;
    auto push_pairs = [&](size_t jnew) {
        for (size_t i = 0; i < jnew; ++i) {
            Monomial l = mono_lcm(*uni_, g_[i].leading().m, g_[jnew].leading().m);
            queue.push_back({i, jnew, l.degree(), stamp++});
        }
    };
    for (size_t j = 1; j < g_.size(); ++j)
        push_pairs(j);

    while (!queue.empty()) {
        // Normal selection: smallest lcm degree, then oldest.
        size_t best = 0;
        for (size_t k = 1; k < queue.size(); ++k) {
            if (queue[k].lcm_degree < queue[best].lcm_degree ||
                (queue[k].lcm_degree == queue[best].lcm_degree &&
                 queue[k].stamp < queue[best].stamp))
                best = k;
        }
        Pair pr = queue[best];
        queue.erase(queue.begin() + best);

        const DiffPoly& fi = g_[pr.i];
        const DiffPoly& fj = g_[pr.j];
        if (coprime(fi.leading().m, fj.leading().m))
            continue; // product criterion: S-polynomial reduces to zero
        Monomial l = mono_lcm(*uni_, fi.leading().m, fj.leading().m);
        DiffPoly s = mono_times(uni_, mono_div(l, fi.leading().m), Q(1) / fi.leading().c, fi) -
                     mono_times(uni_, mono_div(l, fj.leading().m), Q(1) / fj.leading().c, fj);
        DiffPoly r = reduce(s, g_);
        if (r.is_zero())
            continue;
        g_.push_back(r * (Q(1) / r.leading().c));
        size_t total = 0;
        for (const auto& g : g_)
            total += g.terms().size();
        if (total > budget_.max_monomials)
            throw budget_exceeded("basis exceeded the monomial budget");
        push_pairs(g_.size() - 1);
    }

    // Minimalize: drop any element whose leading monomial another one divides.
    std::vector<DiffPoly> minimal;
    for (size_t i = 0; i < g_.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < g_.size() && !redundant; ++j) {
            if (i == j)
                continue;
            if (mono_divides(g_[j].leading().m, g_[i].leading().m)) {
                // Break ties (equal leading monomials) toward the earlier one.
                if (g_[j].leading().m == g_[i].leading().m)
                    redundant = j < i;
                else
                    redundant = true;
            }
        }
        if (!redundant)
            minimal.push_back(g_[i]);
    }
    // Tail-reduce every element against the others.
    std::vector<DiffPoly> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<DiffPoly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i)
                others.push_back(minimal[j]);
        DiffPoly r = reduce(minimal[i], others);
        if (!r.is_zero())
            reduced.push_back(r * (Q(1) / r.leading().c));
    }
    // Canonical order: leading monomials descending.
    std::sort(reduced.begin(), reduced.end(), [&](const DiffPoly& a, const DiffPoly& b) {
        return mono_cmp(*uni_, a.leading().m, b.leading().m) > 0;
    });
    g_ = std::move(reduced);
}

DiffPoly GroebnerBasis::normal_form(const DiffPoly& f) const {
    if (!uni_ || f.universe() != uni_)
        throw universe_mismatch("normal form in a different universe");
    return reduce(f, g_);
}

bool GroebnerBasis::is_unit() const {
    return g_.size() == 1 && g_[0].is_constant() && !g_[0].is_zero();
}

} // namespace jb
