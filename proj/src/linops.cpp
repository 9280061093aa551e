#include "jb/linops.hpp"

#include <algorithm>
#include <sstream>

#include "jb/errors.hpp"

namespace jb {

LinDiffOp LinDiffOp::monomial(const DiffPoly& coeff, const MultiIndex& sigma) {
    LinDiffOp r(coeff.universe());
    r.set(sigma, coeff);
    return r;
}

LinDiffOp LinDiffOp::identity(UniversePtr u) {
    LinDiffOp r(u);
    r.set(MultiIndex(u->dim()), DiffPoly::constant(u, 1));
    return r;
}

void LinDiffOp::set(const MultiIndex& sigma, const DiffPoly& coeff) {
    if (coeff.is_zero())
        c_.erase(sigma);
    else
        c_[sigma] = coeff;
}

int LinDiffOp::ord() const {
    int k = -1;
    for (const auto& [sigma, coeff] : c_)
        k = std::max(k, sigma.order());
    return k;
}

LinDiffOp LinDiffOp::operator+(const LinDiffOp& o) const {
    if (!uni_) return o;
    if (!o.uni_) return *this;
    if (uni_ != o.uni_) throw universe_mismatch("operator universes differ");
    LinDiffOp r(uni_);
    r.c_ = c_;
    for (const auto& [sigma, coeff] : o.c_) {
        auto it = r.c_.find(sigma);
        if (it == r.c_.end()) {
            r.c_.emplace(sigma, coeff);
        } else {
            DiffPoly s = it->second + coeff;
            if (s.is_zero())
                r.c_.erase(it);
            else
                it->second = s;
        }
    }
    return r;
}

LinDiffOp LinDiffOp::operator-() const {
    LinDiffOp r(uni_);
    for (const auto& [sigma, coeff] : c_) r.c_.emplace(sigma, -coeff);
    return r;
}

LinDiffOp LinDiffOp::operator-(const LinDiffOp& o) const { return *this + (-o); }

LinDiffOp LinDiffOp::operator*(const Q& c) const {
    if (c == 0) return LinDiffOp(uni_);
    LinDiffOp r(uni_);
    for (const auto& [sigma, coeff] : c_) r.c_.emplace(sigma, coeff * c);
    return r;
}

LinDiffOp LinDiffOp::lmul(const DiffPoly& p) const {
    LinDiffOp r(uni_ ? uni_ : p.universe());
    for (const auto& [sigma, coeff] : c_) r.set(sigma, p * coeff);
    return r;
}

bool LinDiffOp::operator==(const LinDiffOp& o) const {
    if (c_.size() != o.c_.size()) return false;
    auto it = o.c_.begin();
    for (const auto& [sigma, coeff] : c_) {
        if (!(sigma == it->first) || !(coeff == it->second)) return false;
        ++it;
    }
    return true;
}

DiffPoly LinDiffOp::apply(const DiffPoly& f) const {
    if (!uni_ || f.universe() != uni_)
        throw universe_mismatch("operator applied across universes");
    DiffPoly r = DiffPoly::zero(uni_);
    for (const auto& [sigma, coeff] : c_)
        r = r + coeff * total_derivative_multi(f, sigma);
    return r;
}

std::string LinDiffOp::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print highest filtration first.
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "(" << it->second.str() << ")";
        if (!it->first.is_zero()) os << "*D" << it->first.str();
    }
    return os.str();
}

namespace {

// All rho with rho <= sigma componentwise, including 0 and sigma itself.
std::vector<MultiIndex> sub_indices(const MultiIndex& sigma) {
    std::vector<MultiIndex> out;
    MultiIndex cur(sigma.size());
    for (;;) {
        out.push_back(cur);
        size_t i = 0;
        while (i < cur.size()) {
            if (cur.e[i] < sigma.e[i]) {
                ++cur.e[i];
                break;
            }
            cur.e[i] = 0;
            ++i;
        }
        if (i == cur.size()) break;
    }
    return out;
}

} // namespace

LinDiffOp compose(const LinDiffOp& a, const LinDiffOp& b) {
    UniversePtr u = a.universe() ? a.universe() : b.universe();
    LinDiffOp r(u);
    if (!u) return r;
    if (b.universe() && a.universe() && a.universe() != b.universe())
        throw universe_mismatch("composed operators live in different universes");
    for (const auto& [sigma, ca] : a.coeffs()) {
        for (const auto& rho : sub_indices(sigma)) {
            Q bin = multi_binomial(sigma, rho);
            MultiIndex rem = sigma - rho;
            for (const auto& [tau, cb] : b.coeffs()) {
                DiffPoly piece = ca * total_derivative_multi(cb, rho) * bin;
                LinDiffOp t = LinDiffOp::monomial(piece, rem + tau);
                r = r + t;
            }
        }
    }
    return r;
}

LinDiffOp symbol(const LinDiffOp& a, int k) {
    if (k < a.ord()) throw filtration_error("symbol degree below operator order");
    LinDiffOp r(a.universe());
    for (const auto& [sigma, coeff] : a.coeffs())
        if (sigma.order() == k) r.set(sigma, coeff);
    return r;
}

LinDiffOp symbol_mul(const LinDiffOp& a, const LinDiffOp& b) {
    UniversePtr u = a.universe() ? a.universe() : b.universe();
    LinDiffOp r(u);
    for (const auto& [sa, ca] : a.coeffs())
        for (const auto& [sb, cb] : b.coeffs())
            r = r + LinDiffOp::monomial(ca * cb, sa + sb);
    return r;
}

VectorDiffOp VectorDiffOp::operator+(const VectorDiffOp& o) const {
    if (comp.size() != o.comp.size()) throw shape_error("vector operator size mismatch");
    VectorDiffOp r(uni, comp.size());
    for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = comp[i] + o.comp[i];
    return r;
}

VectorDiffOp VectorDiffOp::operator-(const VectorDiffOp& o) const {
    if (comp.size() != o.comp.size()) throw shape_error("vector operator size mismatch");
    VectorDiffOp r(uni, comp.size());
    for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = comp[i] - o.comp[i];
    return r;
}

VectorDiffOp VectorDiffOp::operator-() const {
    VectorDiffOp r(uni, comp.size());
    for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = -comp[i];
    return r;
}

bool VectorDiffOp::operator==(const VectorDiffOp& o) const {
    if (comp.size() != o.comp.size()) return false;
    for (size_t i = 0; i < comp.size(); ++i)
        if (comp[i] != o.comp[i]) return false;
    return true;
}

bool VectorDiffOp::is_zero() const {
    for (const auto& c : comp)
        if (!c.is_zero()) return false;
    return true;
}

VectorDiffOp compose(const LinDiffOp& s, const VectorDiffOp& row) {
    VectorDiffOp r(row.uni, row.comp.size());
    for (size_t i = 0; i < row.comp.size(); ++i) r.comp[i] = compose(s, row.comp[i]);
    return r;
}

LinDiffOp ndet(const std::vector<std::vector<LinDiffOp>>& m) {
    size_t q = m.size();
    for (const auto& row : m)
        if (row.size() != q) throw shape_error("ndet needs a square matrix");
    if (q == 0) throw shape_error("ndet needs a nonempty matrix");
    UniversePtr u;
    for (const auto& row : m)
        for (const auto& e : row)
            if (e.universe()) u = e.universe();
    LinDiffOp acc(u);
    std::vector<size_t> perm(q);
    for (size_t i = 0; i < q; ++i) perm[i] = i;
    do {
        // Parity of the permutation by counting inversions.
        int inv = 0;
        for (size_t i = 0; i < q; ++i)
            for (size_t j = i + 1; j < q; ++j)
                if (perm[i] > perm[j]) ++inv;
        LinDiffOp prod = m[perm[0]][0];
        for (size_t col = 1; col < q && !prod.is_zero(); ++col)
            prod = compose(prod, m[perm[col]][col]);
        acc = (inv % 2 == 0) ? acc + prod : acc - prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

VectorDiffOp linearize(const PDESystem& sys, const DiffPoly& F) {
    VectorDiffOp row(sys.uni, sys.m());
    for (size_t j = 0; j < sys.unknowns.size(); ++j) {
        LinDiffOp comp(sys.uni);
        // Collect the jet variables of unknown j present in F.
        std::map<MultiIndex, DiffPoly, GradedLexLess> parts;
        for (const auto& t : F.terms()) {
            for (const auto& [var, exp] : t.m.f) {
                const VarInfo& v = sys.uni->var(var);
                if (v.kind == VarKind::Jet && v.symbol == sys.unknowns[j])
                    parts.emplace(v.index, DiffPoly::zero(sys.uni));
            }
        }
        for (auto& [sigma, val] : parts)
            val = F.partial(sys.uni->jet_var(sys.unknowns[j], sigma));
        for (const auto& [sigma, val] : parts) comp.set(sigma, val);
        row.comp[j] = comp;
    }
    return row;
}

namespace {

std::vector<std::vector<LinDiffOp>> rows_without(
    const std::vector<VectorDiffOp>& rows, size_t skip) {
    std::vector<std::vector<LinDiffOp>> m;
    for (size_t i = 0; i < rows.size(); ++i)
        if (i != skip) m.push_back(rows[i].comp);
    return m;
}

void check_bracket_shape(const std::vector<VectorDiffOp>& rows) {
    if (rows.empty()) throw shape_error("multi-bracket needs at least two rows");
    size_t m = rows.size() - 1;
    if (m == 0) throw shape_error("multi-bracket needs at least two rows");
    for (const auto& r : rows)
        if (r.comp.size() != m)
            throw shape_error("multi-bracket needs m+1 rows of length m");
}

} // namespace

VectorDiffOp multibracket_linear(const std::vector<VectorDiffOp>& rows) {
    check_bracket_shape(rows);
    size_t m = rows.size() - 1;
    VectorDiffOp acc(rows[0].uni, m);
    for (size_t k = 0; k < rows.size(); ++k) {
        LinDiffOp minor = ndet(rows_without(rows, k));
        VectorDiffOp term = compose(minor, rows[k]);
        // Sign (-1)^k for 1-based k.
        acc = (k % 2 == 0) ? acc - term : acc + term;
    }
    return acc;
}

VectorDiffOp opposite_multibracket_linear(const std::vector<VectorDiffOp>& rows) {
    check_bracket_shape(rows);
    size_t m = rows.size() - 1;
    VectorDiffOp acc(rows[0].uni, m);
    for (size_t k = 0; k < rows.size(); ++k) {
        LinDiffOp minor = ndet(rows_without(rows, k));
        VectorDiffOp term(rows[0].uni, m);
        for (size_t i = 0; i < m; ++i) term.comp[i] = compose(rows[k].comp[i], minor);
        // Sign (-1)^(k-1) for 1-based k, from the first-column Laplace
        // expansion that defines the place-holder-first determinant.
        acc = (k % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace jb
