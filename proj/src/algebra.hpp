#pragma once

#include "ring.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace hopfext {

// Exponent vector over at most kMaxGens generators.
constexpr int kMaxGens = 12;
using Expo = std::array<uint8_t, kMaxGens>;

inline Expo expo_zero() { return Expo{}; }
inline bool expo_is_one(const Expo& e) {
    for (auto x : e) if (x) return false;
    return true;
}
inline Expo expo_mul(const Expo& a, const Expo& b) {
    Expo r{};
    for (int i = 0; i < kMaxGens; ++i) {
        int v = a[i] + b[i];
        if (v > 255) throw std::overflow_error("monomial exponent overflow");
        r[i] = (uint8_t)v;
    }
    return r;
}

struct Generator {
    std::string name;
    int degree = 0;  // internal degree t, even and >= 0
};

// One rewrite rule: gen^power -> tail (tail in normal form, same degree).
struct RewriteRule {
    int gen = -1;
    int power = 0;
    // tail stored as an Element after presentation construction; kept as
    // term list here to avoid a forward reference.
    std::vector<std::pair<Expo, Rat>> tail;
};

class AlgebraPresentation;

// A polynomial: sorted term list, no zero coefficients.  Order: degree, then
// lex on the exponent vector (generator list order).  Deterministic output
// everywhere depends on this.
class Element {
public:
    std::vector<std::pair<Expo, Rat>> terms;

    bool is_zero() const { return terms.empty(); }
    size_t size() const { return terms.size(); }

    static Element zero() { return {}; }

    // degree if homogeneous, -1 for 0 or inhomogeneous
    int homogeneous_degree(const AlgebraPresentation& P) const;

    Element operator-() const;
    bool operator==(const Element& o) const { return terms == o.terms; }
};

struct MonomialOrder {
    const AlgebraPresentation* P;
    bool operator()(const Expo& a, const Expo& b) const;
};

class AlgebraPresentation {
public:
    std::vector<Generator> generators;
    CoefficientRing coeff;
    // rule per generator index (at most one; leading monomial g^power)
    std::vector<std::optional<RewriteRule>> rules;
    // rule application order
    std::vector<int> rule_priority;

    // Normal forms of non-normal monomials in the ruled generators are the
    // unique solutions of a finite linear system per degree (rule tails may
    // feed each other, so blind rewriting need not terminate).  Solved lazily
    // and cached; the cache is guarded for concurrent use.
    struct NfCache {
        std::map<Expo, Element> nf;
        mutable std::mutex mtx;
        NfCache() = default;
        NfCache(const NfCache& o) : nf(o.nf) {}
        NfCache& operator=(const NfCache& o) {
            nf = o.nf;
            return *this;
        }
    };
    mutable NfCache nfcache;

    AlgebraPresentation() = default;
    AlgebraPresentation(std::vector<Generator> gens, CoefficientRing c)
        : generators(std::move(gens)), coeff(c) {
        rules.resize(generators.size());
    }

    int ngens() const { return (int)generators.size(); }
    int gen_index(const std::string& name) const;
    int degree_of(const Expo& e) const;

    void add_rule(const std::string& gen, int power, const Element& tail);

    // --- arithmetic ---
    Element monomial(const Expo& e, const Rat& c = Rat(1)) const;
    Element gen(const std::string& name) const { return gen(gen_index(name)); }
    Element gen(int idx) const;
    Element constant(const Rat& c) const;
    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element scale(const Element& a, const Rat& c) const;
    Element multiply(const Element& a, const Element& b) const;
    Element pow(const Element& a, int n) const;

    // rewrite to normal form; throws if the relations are inconsistent with
    // the normal monomials forming a basis
    Element normal_form(const Element& e) const;
    bool is_normal_monomial(const Expo& e) const;

    // all normal-form monomials of internal degree t, in monomial order
    std::vector<Expo> basis_in_degree(int t) const;

    // substitution: image of each generator given as an Element of Q
    Element map_through(const Element& e, const AlgebraPresentation& Q,
                        const std::vector<Element>& images) const;

    // --- text io (grammar: identifiers, ^, *, +, -, integer, num/den) ---
    Element parse(const std::string& text) const;
    std::string to_string(const Element& e) const;
    std::string monomial_string(const Expo& e) const;

    // normalize term list into canonical Element
    Element make(std::vector<std::pair<Expo, Rat>> terms) const;

private:
    Element local_nf(const Expo& localmono) const;       // cache-locked entry
    Element local_nf_inner(const Expo& localmono) const;  // assumes lock held
    Expo local_part(const Expo& e) const;
    Expo free_part(const Expo& e) const;
    int local_degree(const Expo& e) const;
    void enumerate_local(int deg, std::vector<Expo>& out) const;
};

}  // namespace hopfext
