#include "algebra.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace hopfext {

int AlgebraPresentation::gen_index(const std::string& name) const {
    for (int i = 0; i < ngens(); ++i)
        if (generators[i].name == name) return i;
    throw std::invalid_argument("unknown generator: " + name);
}

int AlgebraPresentation::degree_of(const Expo& e) const {
    int d = 0;
    for (int i = 0; i < ngens(); ++i) d += e[i] * generators[i].degree;
    return d;
}

bool MonomialOrder::operator()(const Expo& a, const Expo& b) const {
    int da = P->degree_of(a), db = P->degree_of(b);
    if (da != db) return da < db;
    return a < b;  // lex by generator list order
}

static void sort_and_merge(std::vector<std::pair<Expo, Rat>>& terms,
                           const AlgebraPresentation& P) {
    MonomialOrder ord{&P};
    std::sort(terms.begin(), terms.end(),
              [&](const auto& x, const auto& y) { return ord(x.first, y.first); });
    std::vector<std::pair<Expo, Rat>> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(t);
    }
    std::erase_if(out, [&](const auto& t) {
        Rat v = P.coeff.normalize(t.second);
        return P.coeff.is_zero(v);
    });
    for (auto& t : out) t.second = P.coeff.normalize(t.second);
    terms = std::move(out);
}

Element AlgebraPresentation::make(std::vector<std::pair<Expo, Rat>> terms) const {
    sort_and_merge(terms, *this);
    Element e;
    e.terms = std::move(terms);
    return e;
}

int Element::homogeneous_degree(const AlgebraPresentation& P) const {
    if (terms.empty()) return -1;
    int d = P.degree_of(terms[0].first);
    for (auto& t : terms)
        if (P.degree_of(t.first) != d) return -1;
    return d;
}

Element Element::operator-() const {
    Element r = *this;
    for (auto& t : r.terms) t.second = -t.second;
    return r;
}

void AlgebraPresentation::add_rule(const std::string& g, int power, const Element& tail) {
    int gi = gen_index(g);
    RewriteRule r;
    r.gen = gi;
    r.power = power;
    r.tail = tail.terms;
    rules[gi] = std::move(r);
    rule_priority.push_back(gi);
}

Element AlgebraPresentation::monomial(const Expo& e, const Rat& c) const {
    return make({{e, c}});
}

Element AlgebraPresentation::gen(int idx) const {
    Expo e{};
    e[idx] = 1;
    return monomial(e);
}

Element AlgebraPresentation::constant(const Rat& c) const { return make({{expo_zero(), c}}); }

Element AlgebraPresentation::add(const Element& a, const Element& b) const {
    std::vector<std::pair<Expo, Rat>> t;
    t.reserve(a.terms.size() + b.terms.size());
    t.insert(t.end(), a.terms.begin(), a.terms.end());
    t.insert(t.end(), b.terms.begin(), b.terms.end());
    return make(std::move(t));
}

Element AlgebraPresentation::sub(const Element& a, const Element& b) const {
    return add(a, -b);
}

Element AlgebraPresentation::scale(const Element& a, const Rat& c) const {
    std::vector<std::pair<Expo, Rat>> t = a.terms;
    for (auto& x : t) x.second *= c;
    return make(std::move(t));
}

Element AlgebraPresentation::multiply(const Element& a, const Element& b) const {
    std::vector<std::pair<Expo, Rat>> t;
    t.reserve(a.terms.size() * b.terms.size());
    for (auto& x : a.terms)
        for (auto& y : b.terms)
            t.push_back({expo_mul(x.first, y.first), x.second * y.second});
    return normal_form(make(std::move(t)));
}

Element AlgebraPresentation::pow(const Element& a, int n) const {
    Element r = constant(1);
    for (int i = 0; i < n; ++i) r = multiply(r, a);
    return r;
}

bool AlgebraPresentation::is_normal_monomial(const Expo& e) const {
    for (int i = 0; i < ngens(); ++i)
        if (rules[i] && e[i] >= rules[i]->power) return false;
    return true;
}

Expo AlgebraPresentation::local_part(const Expo& e) const {
    Expo r{};
    for (int i = 0; i < ngens(); ++i)
        if (rules[i]) r[i] = e[i];
    return r;
}

Expo AlgebraPresentation::free_part(const Expo& e) const {
    Expo r{};
    for (int i = 0; i < ngens(); ++i)
        if (!rules[i]) r[i] = e[i];
    return r;
}

int AlgebraPresentation::local_degree(const Expo& e) const {
    int d = 0;
    for (int i = 0; i < ngens(); ++i)
        if (rules[i]) d += e[i] * generators[i].degree;
    return d;
}

void AlgebraPresentation::enumerate_local(int deg, std::vector<Expo>& out) const {
    std::vector<int> ruled;
    for (int i = 0; i < ngens(); ++i)
        if (rules[i]) ruled.push_back(i);
    Expo cur{};
    std::function<void(size_t, int)> rec = [&](size_t k, int rem) {
        if (rem == 0) { out.push_back(cur); return; }
        if (k >= ruled.size()) return;
        int gi = ruled[k], d = generators[gi].degree;
        for (int e = 0; e * d <= rem; ++e) {
            if (e > 255) break;
            cur[gi] = (uint8_t)e;
            rec(k + 1, rem - e * d);
        }
        cur[gi] = 0;
    };
    rec(0, deg);
}

Element AlgebraPresentation::local_nf(const Expo& m) const {
    std::lock_guard<std::mutex> lock(nfcache.mtx);
    return local_nf_inner(m);
}

// Normal form of a monomial in the ruled generators only.  All non-normal
// ruled monomials of the same degree are solved together: one rewrite step
// expresses each as normal terms + free-coefficient terms (whose ruled part
// has strictly smaller degree, resolved recursively) + scalar multiples of
// same-degree non-normal monomials.  The scalar system (I - C) X = R is
// uniquely solvable exactly when the normal monomials form a basis.
Element AlgebraPresentation::local_nf_inner(const Expo& m0) const {
    auto hit = nfcache.nf.find(m0);
    if (hit != nfcache.nf.end()) return hit->second;

    int deg = local_degree(m0);
    std::vector<Expo> all;
    enumerate_local(deg, all);
    std::vector<Expo> unknowns;
    for (auto& m : all)
        if (!is_normal_monomial(m) && !nfcache.nf.count(m)) unknowns.push_back(m);

    int n = (int)unknowns.size();
    auto index_of = [&](const Expo& e) {
        for (int i = 0; i < n; ++i)
            if (unknowns[i] == e) return i;
        return -1;
    };

    // X_i = sum_j C[i][j] X_j + R_i
    std::vector<std::vector<Rat>> C(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Element> R(n, Element::zero());
    for (int i = 0; i < n; ++i) {
        const Expo& m = unknowns[i];
        int which = -1;
        for (int gi : rule_priority)
            if (m[gi] >= rules[gi]->power) { which = gi; break; }
        const RewriteRule& r = *rules[which];
        Expo rest = m;
        rest[which] = (uint8_t)(rest[which] - r.power);
        for (auto& tt : r.tail) {
            Expo prod = expo_mul(rest, tt.first);
            Expo lp = local_part(prod), fp = free_part(prod);
            if (is_normal_monomial(lp)) {
                R[i] = add(R[i], monomial(prod, tt.second));
            } else if (expo_is_one(fp)) {
                auto hit2 = nfcache.nf.find(lp);
                if (hit2 != nfcache.nf.end()) {
                    R[i] = add(R[i], scale(hit2->second, tt.second));
                } else {
                    int j = index_of(lp);
                    if (j < 0) throw std::logic_error("missing unknown in nf system");
                    C[i][j] += tt.second;
                }
            } else {
                Element sub = local_nf_inner(lp);  // strictly smaller ruled degree
                std::vector<std::pair<Expo, Rat>> ts;
                for (auto& st : sub.terms)
                    ts.push_back({expo_mul(fp, st.first), st.second * tt.second});
                R[i] = add(R[i], make(std::move(ts)));
            }
        }
    }

    // Gaussian elimination on (I - C) with Element-valued right-hand sides.
    std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] = (i == j ? Rat(1) : Rat(0)) - C[i][j];
    std::vector<int> perm(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int row = col; row < n; ++row)
            if (sgn(M[row][col]) != 0) { piv = row; break; }
        if (piv < 0) throw std::runtime_error("rewrite system singular: relations do not define a free basis");
        std::swap(M[piv], M[col]);
        std::swap(R[piv], R[col]);
        Rat inv = 1 / M[col][col];
        for (int j = col; j < n; ++j) M[col][j] *= inv;
        R[col] = scale(R[col], inv);
        for (int row = 0; row < n; ++row) {
            if (row == col || sgn(M[row][col]) == 0) continue;
            Rat f = M[row][col];
            for (int j = col; j < n; ++j) M[row][j] -= f * M[col][j];
            R[row] = sub(R[row], scale(R[col], f));
        }
    }
    (void)perm;
    for (int i = 0; i < n; ++i) nfcache.nf[unknowns[i]] = R[i];
    auto res = nfcache.nf.find(m0);
    if (res == nfcache.nf.end()) throw std::logic_error("nf solve missed target");
    return res->second;
}

Element AlgebraPresentation::normal_form(const Element& e0) const {
    Element e = make(e0.terms);
    if (rule_priority.empty()) return e;
    std::vector<std::pair<Expo, Rat>> out;
    for (auto& t : e.terms) {
        Expo lp = local_part(t.first), fp = free_part(t.first);
        if (is_normal_monomial(lp)) {
            out.push_back(t);
            continue;
        }
        Element nfl = local_nf(lp);
        for (auto& st : nfl.terms)
            out.push_back({expo_mul(fp, st.first), st.second * t.second});
    }
    return make(std::move(out));
}

std::vector<Expo> AlgebraPresentation::basis_in_degree(int t) const {
    std::vector<Expo> out;
    Expo cur{};
    std::function<void(int, int)> rec = [&](int gi, int remaining) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        if (gi >= ngens()) return;
        int d = generators[gi].degree;
        int maxe = rules[gi] ? rules[gi]->power - 1 : (d > 0 ? remaining / d : 0);
        if (d == 0) maxe = 0;  // degree-0 generators not supported in bases
        for (int e = 0; e <= maxe && e * d <= remaining; ++e) {
            cur[gi] = (uint8_t)e;
            rec(gi + 1, remaining - e * d);
        }
        cur[gi] = 0;
    };
    if (t >= 0) rec(0, t);
    MonomialOrder ord{this};
    std::sort(out.begin(), out.end(), ord);
    return out;
}

Element AlgebraPresentation::map_through(const Element& e, const AlgebraPresentation& Q,
                                         const std::vector<Element>& images) const {
    Element acc = Q.constant(0);
    for (auto& t : e.terms) {
        Element m = Q.constant(t.second);
        for (int i = 0; i < ngens(); ++i)
            for (int k = 0; k < t.first[i]; ++k) m = Q.multiply(m, images[i]);
        acc = Q.add(acc, m);
    }
    return acc;
}

// ----- text io -----

namespace {
struct Lexer {
    const std::string& s;
    size_t i = 0;
    void skip() { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; }
    bool eof() { skip(); return i >= s.size(); }
    char peek() { skip(); return i < s.size() ? s[i] : '\0'; }
    char get() { skip(); return s[i++]; }
};
}  // namespace

Element AlgebraPresentation::parse(const std::string& text) const {
    Lexer lx{text};
    std::vector<std::pair<Expo, Rat>> terms;
    bool first = true;
    while (!lx.eof()) {
        int sign = 1;
        char c = lx.peek();
        if (c == '+' || c == '-') {
            lx.get();
            sign = c == '-' ? -1 : 1;
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' in polynomial");
        }
        first = false;
        // one product of factors: number, num/den, identifiers with optional ^k
        Rat coef(sign);
        Expo e{};
        bool any = false;
        for (;;) {
            char p = lx.peek();
            if (std::isdigit((unsigned char)p)) {
                std::string num;
                while (!lx.eof() && std::isdigit((unsigned char)lx.peek())) num += lx.get();
                if (lx.peek() == '/') {
                    lx.get();
                    std::string den;
                    while (!lx.eof() && std::isdigit((unsigned char)lx.peek())) den += lx.get();
                    if (den.empty()) throw std::invalid_argument("malformed fraction");
                    coef *= Rat(num + "/" + den);
                } else {
                    coef *= Rat(num);
                }
                any = true;
            } else if (std::isalpha((unsigned char)p) || p == '_') {
                std::string id;
                while (!lx.eof() && (std::isalnum((unsigned char)lx.peek()) || lx.peek() == '_'))
                    id += lx.get();
                int gi = gen_index(id);
                int k = 1;
                if (lx.peek() == '^') {
                    lx.get();
                    std::string num;
                    while (!lx.eof() && std::isdigit((unsigned char)lx.peek())) num += lx.get();
                    if (num.empty()) throw std::invalid_argument("malformed exponent");
                    k = std::stoi(num);
                }
                int v = e[gi] + k;
                if (v > 255) throw std::overflow_error("exponent too large");
                e[gi] = (uint8_t)v;
                any = true;
            } else {
                break;
            }
            if (lx.peek() == '*') { lx.get(); continue; }
            char q = lx.peek();
            if (std::isalpha((unsigned char)q) || q == '_' || std::isdigit((unsigned char)q))
                continue;  // implicit product
            break;
        }
        if (!any) throw std::invalid_argument("empty term in polynomial");
        terms.push_back({e, coef});
    }
    return normal_form(make(std::move(terms)));
}

std::string AlgebraPresentation::monomial_string(const Expo& e) const {
    std::string out;
    for (int i = 0; i < ngens(); ++i) {
        if (!e[i]) continue;
        if (!out.empty()) out += "*";
        out += generators[i].name;
        if (e[i] > 1) out += "^" + std::to_string((int)e[i]);
    }
    return out.empty() ? "1" : out;
}

std::string AlgebraPresentation::to_string(const Element& e) const {
    if (e.terms.empty()) return "0";
    std::string out;
    for (auto& t : e.terms) {
        Rat c = t.second;
        bool neg = sgn(c) < 0;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        Rat a = abs(c);
        std::string ms = monomial_string(t.first);
        if (a == 1 && ms != "1")
            out += ms;
        else if (ms == "1")
            out += rat_to_string(a);
        else
            out += rat_to_string(a) + "*" + ms;
    }
    return out;
}

}  // namespace hopfext
