#pragma once

#include "algebra.hpp"

#include <map>
#include <utility>

namespace hopfext {

class HopfAlgebroidPresentation;

// Element of Gamma (x)_A Gamma in normal form: A-coefficients pushed to the
// left tensor factor, slots are pure Gamma-basis monomials (exponents of the
// extra generators only, below the rule bounds).
struct Tensor2 {
    // (left slot, right slot) -> coefficient in A
    std::map<std::pair<Expo, Expo>, Element> terms;
    bool operator==(const Tensor2&) const = default;
    bool is_zero() const { return terms.empty(); }
};

struct Tensor3 {
    std::map<std::array<Expo, 3>, Element> terms;
    bool operator==(const Tensor3&) const = default;
};

struct AxiomReport {
    struct Entry {
        std::string identity;
        bool pass;
        std::string detail;
    };
    std::vector<Entry> entries;
    bool all_pass() const {
        for (auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
};

struct InvariantCertificate {
    bool invariant = false;
    std::string offending;  // generator whose eta_R image escapes I*Gamma
    // per ideal generator: eta_R(gen) written as sum of (ideal gen, Gamma element)
    std::vector<std::pair<std::string, std::string>> expressions;
};

class HopfAlgebroidPresentation {
public:
    std::string name;
    AlgebraPresentation A;      // base ring
    AlgebraPresentation Gamma;  // generators: A's first (eta_L inclusion), then extras
    int n_agens = 0;
    std::vector<Element> eta_R_gen;    // per A-generator, in Gamma
    std::vector<Tensor2> psi_gen;      // per extra generator
    std::vector<Element> epsilon_gen;  // per extra generator, in A
    bool gamma_finite_free = false;    // Gamma free over A with finite monomial basis
    std::vector<Expo> gamma_basis;     // if finite: pure-extra monomials incl. 1

    // ---- basic maps ----
    Element eta_L(const Element& a) const;             // A -> Gamma
    Element eta_R(const Element& a) const;             // A -> Gamma
    Element epsilon(const Element& g) const;           // Gamma -> A
    Element a_to_gamma(const Element& a) const { return eta_L(a); }
    Element gamma_reduce(const Element& g) const { return Gamma.normal_form(g); }

    // split a Gamma element into (A-coefficient, pure basis monomial) parts
    std::vector<std::pair<Element, Expo>> split(const Element& g) const;
    Expo a_part(const Expo& e) const;
    Expo g_part(const Expo& e) const;
    bool is_pure_a(const Expo& e) const;

    // ---- tensor arithmetic ----
    Tensor2 tensor_term(const Element& coeff, const Element& left, const Element& right) const;
    Tensor2 tensor_add(const Tensor2& a, const Tensor2& b) const;
    Tensor2 tensor_scale(const Tensor2& a, const Rat& c) const;
    Tensor2 tensor_mul(const Tensor2& a, const Tensor2& b) const;
    Tensor2 embed_left(const Element& g) const;
    Tensor2 embed_right(const Element& g) const;
    Element contract_eps_left(const Tensor2& t) const;   // (eps (x) 1)
    Element contract_eps_right(const Tensor2& t) const;  // (1 (x) eps)

    Tensor2 psi(const Element& g) const;
    const Tensor2& psi_basis(const Expo& pure) const;     // memoized, pure monomial
    const Tensor2& psibar_basis(const Expo& pure) const;  // psi - g(x)1 - 1(x)g

    Tensor3 psi_left(const Tensor2& t) const;
    Tensor3 psi_right(const Tensor2& t) const;

    int tensor_degree(const std::pair<Expo, Expo>& k, const Element& c) const;

    // ---- structure ----
    AxiomReport check_axioms(int t_max = 0) const;
    bool eta_R_equals_eta_L() const;  // Hopf algebra case (trivial migrations)

    // per-degree basis of Gamma as an A-module complement enumeration:
    // pure-extra normal monomials of degree t
    std::vector<Expo> gamma_basis_in_degree(int t) const;

    // string helpers
    std::string tensor_to_string(const Tensor2& t) const;

    // caches
    struct Cache {
        std::map<Expo, Tensor2> psi, psibar;
        std::map<Expo, Element> etaR;
        mutable std::mutex mtx;
        Cache() = default;
        Cache(const Cache& o) : psi(o.psi), psibar(o.psibar), etaR(o.etaR) {}
        Cache& operator=(const Cache& o) {
            psi = o.psi; psibar = o.psibar; etaR = o.etaR;
            return *this;
        }
    };
    mutable Cache cache;
};

// invariant ideals: generated by the prime p and/or base generators
struct IdealSpec {
    bool contains_p = false;
    std::vector<std::string> agens;
};

InvariantCertificate is_invariant(const HopfAlgebroidPresentation& H, const IdealSpec& I);
HopfAlgebroidPresentation quotient_by_invariant_ideal(const HopfAlgebroidPresentation& H,
                                                      const IdealSpec& I);

// preset construction (see presets.cpp); throws on unknown name
HopfAlgebroidPresentation builtin_algebroid(const std::string& name);

// TOML io
HopfAlgebroidPresentation algebroid_from_toml(const std::string& text);
std::string algebroid_to_toml(const HopfAlgebroidPresentation& H);

}  // namespace hopfext
