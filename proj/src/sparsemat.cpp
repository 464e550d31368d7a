#include "sparsemat.hpp"

#include <algorithm>
#include <map>

namespace hopfext {

SpVec spvec_axpy(const SpVec& a, const Rat& c, const SpVec& b, const CoefficientRing& ring) {
    SpVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i >= a.size() || b[j].first < a[i].first) {
            Rat v = ring.normalize(c * b[j].second);
            if (!ring.is_zero(v)) out.push_back({b[j].first, v});
            ++j;
        } else {
            Rat v = ring.normalize(a[i].second + c * b[j].second);
            if (!ring.is_zero(v)) out.push_back({a[i].first, v});
            ++i;
            ++j;
        }
    }
    return out;
}

SpVec spvec_add(const SpVec& a, const SpVec& b, const CoefficientRing& ring) {
    return spvec_axpy(a, Rat(1), b, ring);
}

SpVec spvec_scale(const SpVec& a, const Rat& c, const CoefficientRing& ring) {
    SpVec out;
    out.reserve(a.size());
    for (auto& [i, v] : a) {
        Rat nv = ring.normalize(c * v);
        if (!ring.is_zero(nv)) out.push_back({i, nv});
    }
    return out;
}

// ---------------- F_p backend ----------------

namespace {

class FpEchelon final : public IEchelon {
public:
    FpEchelon(int p, bool track) : p_((uint32_t)p), track_(track) {}

    using Vec = std::vector<std::pair<uint32_t, uint32_t>>;

    static uint32_t inv_mod(uint32_t a, uint32_t p) {
        // extended euclid
        int64_t t = 0, nt = 1, r = p, nr = a % p;
        while (nr != 0) {
            int64_t q = r / nr;
            std::swap(t -= q * nt, nt);
            std::swap(r -= q * nr, nr);
        }
        return (uint32_t)(t < 0 ? t + p : t);
    }

    Vec axpy(const Vec& a, uint32_t c, const Vec& b) const {
        Vec out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j >= b.size() || (i < a.size() && a[i].first < b[j].first))
                out.push_back(a[i++]);
            else if (i >= a.size() || b[j].first < a[i].first) {
                uint32_t v = (uint32_t)(((uint64_t)c * b[j].second) % p_);
                if (v) out.push_back({b[j].first, v});
                ++j;
            } else {
                uint32_t v = (uint32_t)((a[i].second + (uint64_t)c * b[j].second) % p_);
                if (v) out.push_back({a[i].first, v});
                ++i;
                ++j;
            }
        }
        return out;
    }

    Vec from_rat(const SpVec& v) const {
        Vec out;
        out.reserve(v.size());
        for (auto& [i, x] : v) {
            // canonical F_p values are integers in [0, p)
            uint32_t r = (uint32_t)mpz_fdiv_ui(Rat(x).get_num().get_mpz_t(), p_);
            if (r) out.push_back({i, r});
        }
        return out;
    }

    static SpVec to_rat(const Vec& v) {
        SpVec out;
        out.reserve(v.size());
        for (auto& [i, x] : v) out.push_back({i, Rat((long)x)});
        return out;
    }

    AddResult add(SpVec v0, SpVec companion0) override {
        Vec v = from_rat(v0), companion = from_rat(companion0);
        while (!v.empty()) {
            auto it = lead_.find(v[0].first);
            if (it == lead_.end()) {
                lead_[v[0].first] = (int)cols_.size();
                cols_.push_back(std::move(v));
                comps_.push_back(std::move(companion));
                return {true, {}};
            }
            int ci = it->second;
            uint32_t f = (uint32_t)(((uint64_t)(p_ - v[0].second) *
                                     inv_mod(cols_[ci][0].second, p_)) % p_);
            v = axpy(v, f, cols_[ci]);
            if (track_) companion = axpy(companion, f, comps_[ci]);
        }
        return {false, to_rat(companion)};
    }

    std::pair<SpVec, SpVec> reduce(const SpVec& v0) const override {
        Vec v = from_rat(v0), comb;
        while (!v.empty()) {
            auto it = lead_.find(v[0].first);
            if (it == lead_.end()) break;
            int ci = it->second;
            uint32_t f = (uint32_t)(((uint64_t)(p_ - v[0].second) *
                                     inv_mod(cols_[ci][0].second, p_)) % p_);
            v = axpy(v, f, cols_[ci]);
            if (track_) comb = axpy(comb, f, comps_[ci]);
        }
        return {to_rat(v), to_rat(comb)};
    }

    int rank() const override { return (int)cols_.size(); }
    std::unique_ptr<IEchelon> clone() const override {
        return std::make_unique<FpEchelon>(*this);
    }

private:
    uint32_t p_;
    bool track_;
    std::vector<Vec> cols_, comps_;
    std::map<uint32_t, int> lead_;
};

// ---------------- integer backend (Z_(p) and Q) ----------------

class ZEchelon final : public IEchelon {
public:
    ZEchelon(CoefficientRing ring, bool track) : ring_(ring), track_(track) {}

    using Z = mpz_class;
    using Vec = std::vector<std::pair<uint32_t, Z>>;

    long val(const Z& x) const {
        if (ring_.kind != RingKind::PLocal) return 0;
        long v = 0;
        Z n = x;
        while (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)ring_.p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), (unsigned long)ring_.p);
            ++v;
        }
        return v;
    }

    static Vec zaxpy(const Vec& a, const Z& ascale, const Z& c, const Vec& b) {
        // ascale*a + c*b
        Vec out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
                Z v = ascale * a[i].second;
                if (v != 0) out.push_back({a[i].first, std::move(v)});
                ++i;
            } else if (i >= a.size() || b[j].first < a[i].first) {
                Z v = c * b[j].second;
                if (v != 0) out.push_back({b[j].first, std::move(v)});
                ++j;
            } else {
                Z v = ascale * a[i].second + c * b[j].second;
                if (v != 0) out.push_back({a[i].first, std::move(v)});
                ++i;
                ++j;
            }
        }
        return out;
    }

    // strip the largest allowed common factor of (v, companion) jointly
    void strip(Vec& v, Vec& companion) const {
        Z g = 0;
        for (auto& [i, x] : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        for (auto& [i, x] : companion) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 0) return;
        if (ring_.kind == RingKind::PLocal)
            while (mpz_divisible_ui_p(g.get_mpz_t(), (unsigned long)ring_.p))
                mpz_divexact_ui(g.get_mpz_t(), g.get_mpz_t(), (unsigned long)ring_.p);
        if (g <= 1) return;
        for (auto& [i, x] : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        for (auto& [i, x] : companion)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }

    // convert, clearing denominators; the scale multiplies the companion too
    void from_rat(const SpVec& v0, const SpVec& comp0, Vec& v, Vec& comp) const {
        Z L = 1;
        for (auto& [i, x] : v0)
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den().get_mpz_t());
        for (auto& [i, x] : comp0)
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den().get_mpz_t());
        v.clear();
        comp.clear();
        for (auto& [i, x] : v0) {
            Z e = x.get_num() * (L / x.get_den());
            if (e != 0) v.push_back({i, std::move(e)});
        }
        for (auto& [i, x] : comp0) {
            Z e = x.get_num() * (L / x.get_den());
            if (e != 0) comp.push_back({i, std::move(e)});
        }
    }

    AddResult add(SpVec v0, SpVec companion0) override {
        Vec v, companion;
        from_rat(v0, companion0, v, companion);
        strip(v, companion);
        int steps = 0;
        while (!v.empty()) {
            auto it = lead_.find(v[0].first);
            if (it == lead_.end()) {
                lead_[v[0].first] = (int)cols_.size();
                cols_.push_back(std::move(v));
                comps_.push_back(std::move(companion));
                return {true, {}};
            }
            int ci = it->second;
            const Z& pv = cols_[ci][0].second;
            long ev = val(v[0].second), ep = val(pv);
            if (ring_.kind == RingKind::PLocal && ev < ep) {
                std::swap(cols_[ci], v);
                std::swap(comps_[ci], companion);
                continue;  // re-lookup with the old pivot as incoming
            }
            // v := u * v - (lead/p^ep)/??? ... all-integer elimination:
            // v := odd(pv) * v - (lead(v)/p^ep) * cols_[ci]   (PLocal)
            // v := pv * v - lead(v) * cols_[ci]               (field)
            Z u, m;
            if (ring_.kind == RingKind::PLocal) {
                Z pe = 1;
                for (long k = 0; k < ep; ++k) pe *= ring_.p;
                u = pv / pe;
                m = -(v[0].second / pe);
            } else {
                u = pv;
                m = -v[0].second;
            }
            v = zaxpy(v, u, m, cols_[ci]);
            companion = zaxpy(companion, u, m, comps_[ci]);
            if (++steps % 4 == 0) strip(v, companion);
        }
        strip(v, companion);
        return {false, to_rat(companion)};
    }

    std::pair<SpVec, SpVec> reduce(const SpVec& v0) const override {
        // exact rational reduction against integer columns
        SpVec v = v0, comb;
        for (auto& e : v) e.second = ring_.normalize(e.second);
        std::erase_if(v, [&](auto& e) { return ring_.is_zero(e.second); });
        while (!v.empty()) {
            auto it = lead_.find(v[0].first);
            if (it == lead_.end()) break;
            int ci = it->second;
            Rat pivot((long)0);
            pivot = Rat(cols_[ci][0].second);
            if (ring_.kind == RingKind::PLocal &&
                p_valuation(v[0].second, ring_.p) < val(cols_[ci][0].second))
                break;
            Rat f = ring_.normalize(-v[0].second / pivot);
            SpVec colr = to_rat(cols_[ci]);
            v = spvec_axpy(v, f, colr, ring_);
            if (track_) {
                SpVec compr = to_rat(comps_[ci]);
                comb = spvec_axpy(comb, f, compr, ring_);
            }
        }
        return {v, comb};
    }

    static SpVec to_rat(const Vec& v) {
        SpVec out;
        out.reserve(v.size());
        for (auto& [i, x] : v) out.push_back({i, Rat(x)});
        return out;
    }

    int rank() const override { return (int)cols_.size(); }
    std::unique_ptr<IEchelon> clone() const override {
        return std::make_unique<ZEchelon>(*this);
    }

private:
    CoefficientRing ring_;
    bool track_;
    std::vector<Vec> cols_, comps_;
    std::map<uint32_t, int> lead_;
};

}  // namespace

std::unique_ptr<IEchelon> make_echelon(CoefficientRing ring, bool track) {
    if (ring.kind == RingKind::PrimeField)
        return std::make_unique<FpEchelon>(ring.p, track);
    return std::make_unique<ZEchelon>(ring, track);
}

int sparse_rank(const SparseMatrix& M, const CoefficientRing& ring) {
    auto E = make_echelon(ring, false);
    int r = 0;
    for (auto& c : M.cols)
        if (E->add(c, {}).independent) ++r;
    return r;
}

std::vector<SpVec> sparse_kernel(const SparseMatrix& M, const CoefficientRing& ring) {
    auto E = make_echelon(ring, true);
    std::vector<SpVec> ker;
    for (uint32_t j = 0; j < M.cols.size(); ++j) {
        auto res = E->add(M.cols[j], SpVec{{j, Rat(1)}});
        if (!res.independent) ker.push_back(std::move(res.companion));
    }
    return ker;
}

// ---------------- Smith normal form ----------------

namespace {

struct SnfState {
    CoefficientRing ring;
    std::vector<std::map<uint32_t, Rat>> rows;
    std::vector<std::map<uint32_t, Rat>> cols;

    SnfState(SparseMatrix& M, CoefficientRing r) : ring(r) {
        rows.resize(M.nrows);
        cols.resize(M.cols.size());
        for (uint32_t j = 0; j < M.cols.size(); ++j)
            for (auto& [i, v] : M.cols[j]) {
                Rat nv = ring.normalize(v);
                if (ring.is_zero(nv)) continue;
                rows[i][j] = nv;
                cols[j][i] = nv;
            }
    }

    long val(const Rat& x) const {
        return ring.kind == RingKind::PLocal ? p_valuation(x, ring.p) : 0;
    }

    void set(uint32_t i, uint32_t j, const Rat& v) {
        if (ring.is_zero(v)) {
            rows[i].erase(j);
            cols[j].erase(i);
        } else {
            rows[i][j] = v;
            cols[j][i] = v;
        }
    }

    void row_axpy(uint32_t i, const Rat& f, uint32_t k) {
        for (auto& [j, v] : std::map<uint32_t, Rat>(rows[k])) {
            auto it = rows[i].find(j);
            Rat nv = ring.normalize((it == rows[i].end() ? Rat(0) : it->second) + f * v);
            set(i, j, nv);
        }
    }
    void col_axpy(uint32_t j, const Rat& f, uint32_t k) {
        for (auto& [i, v] : std::map<uint32_t, Rat>(cols[k])) {
            auto it = cols[j].find(i);
            Rat nv = ring.normalize((it == cols[j].end() ? Rat(0) : it->second) + f * v);
            set(i, j, nv);
        }
    }

    // multiply row i by a unit making entries integer with p-coprime content
    Rat rescale_row(uint32_t i) {
        if (rows[i].empty() || ring.kind == RingKind::PrimeField) return Rat(1);
        mpz_class L = 1, G = 0;
        for (auto& [j, x] : rows[i]) {
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den().get_mpz_t());
            mpz_gcd(G.get_mpz_t(), G.get_mpz_t(), x.get_num().get_mpz_t());
        }
        if (G == 0) return Rat(1);
        if (ring.kind == RingKind::PLocal)
            while (mpz_divisible_ui_p(G.get_mpz_t(), (unsigned long)ring.p))
                mpz_divexact_ui(G.get_mpz_t(), G.get_mpz_t(), (unsigned long)ring.p);
        Rat f(L, G);
        f.canonicalize();
        if (f == 1) return f;
        for (auto& [j, x] : std::map<uint32_t, Rat>(rows[i]))
            set(i, j, ring.normalize(x * f));
        return f;
    }
};

bool find_pivot(SnfState& S, uint32_t& pi, uint32_t& pj, long& beste) {
    long bestfill = -1;
    bool found = false;
    beste = -1;
    for (uint32_t i = 0; i < S.rows.size(); ++i) {
        for (auto& [j, v] : S.rows[i]) {
            long e = S.val(v);
            long fill = (long)(S.rows[i].size() - 1) * (long)(S.cols[j].size() - 1);
            if (!found || e < beste || (e == beste && fill < bestfill)) {
                found = true;
                beste = e;
                bestfill = fill;
                pi = i;
                pj = j;
            }
            if (found && beste == 0 && bestfill <= 2) return true;
        }
        if (found && beste == 0 && bestfill <= 2) return true;
    }
    return found;
}

}  // namespace

std::vector<long> snf_exponents(SparseMatrix M, const CoefficientRing& ring) {
    SnfState S(M, ring);
    std::vector<long> exps;
    for (;;) {
        uint32_t pi = 0, pj = 0;
        long beste = -1;
        if (!find_pivot(S, pi, pj, beste)) break;
        exps.push_back(beste);
        Rat pivot = S.rows[pi][pj];
        auto colcopy = S.cols[pj];
        for (auto& [i, v] : colcopy) {
            if (i == pi) continue;
            Rat f = ring.normalize(-v / pivot);
            S.row_axpy(i, f, pi);
            S.rescale_row(i);
        }
        auto rowcopy = S.rows[pi];
        for (auto& [j, v] : rowcopy) {
            if (j == pj) continue;
            Rat f = ring.normalize(-v / pivot);
            S.col_axpy(j, f, pj);
        }
        S.rows[pi].clear();
        for (auto& [i, v] : S.cols[pj]) S.rows[i].erase(pj);
        S.cols[pj].clear();
    }
    std::sort(exps.begin(), exps.end());
    return exps;
}

SnfTransform snf_with_left_transform(SparseMatrix M, const CoefficientRing& ring) {
    uint32_t n = M.nrows;
    SnfState S(M, ring);
    std::vector<SpVec> uinv(n);
    for (uint32_t i = 0; i < n; ++i) uinv[i] = {{i, Rat(1)}};

    SnfTransform out;
    std::vector<uint32_t> pivot_rows;
    for (;;) {
        uint32_t pi = 0, pj = 0;
        long beste = -1;
        if (!find_pivot(S, pi, pj, beste)) break;
        out.exponents.push_back(beste);
        pivot_rows.push_back(pi);
        Rat pivot = S.rows[pi][pj];
        auto colcopy = S.cols[pj];
        for (auto& [i, v] : colcopy) {
            if (i == pi) continue;
            Rat f = ring.normalize(-v / pivot);
            S.row_axpy(i, f, pi);
            uinv[pi] = spvec_axpy(uinv[pi], -f, uinv[i], ring);
            Rat u = S.rescale_row(i);
            if (u != 1) uinv[i] = spvec_scale(uinv[i], Rat(1) / u, ring);
        }
        auto rowcopy = S.rows[pi];
        for (auto& [j, v] : rowcopy) {
            if (j == pj) continue;
            Rat f = ring.normalize(-v / pivot);
            S.col_axpy(j, f, pj);
        }
        S.rows[pi].clear();
        for (auto& [i, v] : S.cols[pj]) S.rows[i].erase(pj);
        S.cols[pj].clear();
    }
    std::vector<bool> used(n, false);
    for (auto i : pivot_rows) used[i] = true;
    out.uinv_cols.clear();
    for (auto i : pivot_rows) out.uinv_cols.push_back(uinv[i]);
    for (uint32_t i = 0; i < n; ++i)
        if (!used[i]) out.uinv_cols.push_back(uinv[i]);
    return out;
}

}  // namespace hopfext
