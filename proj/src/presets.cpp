#include "hopf.hpp"
#include "reductions.hpp"

#include <functional>
#include <mutex>

namespace hopfext {

namespace {

HopfAlgebroidPresentation make_weierstrass(CoefficientRing ring, const std::string& name) {
    HopfAlgebroidPresentation H;
    H.name = name;
    H.A = AlgebraPresentation({{"a1", 2}, {"a2", 4}, {"a3", 6}, {"a4", 8}, {"a6", 12}}, ring);
    H.Gamma = AlgebraPresentation(
        {{"a1", 2}, {"a2", 4}, {"a3", 6}, {"a4", 8}, {"a6", 12}, {"r", 4}, {"s", 2}, {"t", 6}},
        ring);
    H.n_agens = 5;
    H.gamma_finite_free = false;

    auto& G = H.Gamma;
    H.eta_R_gen = {
        G.parse("a1 + 2*s"),
        G.parse("a2 - a1*s + 3*r - s^2"),
        G.parse("a3 + a1*r + 2*t"),
        G.parse("a4 - a3*s + 2*a2*r - a1*t - a1*r*s - 2*s*t + 3*r^2"),
        G.parse("a6 + a4*r - a3*t + a2*r^2 - a1*r*t - t^2 + r^3"),
    };
    // extras in generator order r, s, t
    H.psi_gen = {
        H.tensor_add(H.embed_left(G.gen("r")), H.embed_right(G.gen("r"))),
        H.tensor_add(H.embed_left(G.gen("s")), H.embed_right(G.gen("s"))),
        H.tensor_add(H.tensor_add(H.embed_left(G.gen("t")), H.embed_right(G.gen("t"))),
                     H.tensor_mul(H.embed_left(G.gen("s")), H.embed_right(G.gen("r")))),
    };
    H.epsilon_gen = {H.A.constant(0), H.A.constant(0), H.A.constant(0)};
    return H;
}

HopfAlgebroidPresentation make_p3_reduced() {
    auto W = make_weierstrass(CoefficientRing::Zp(3), "weierstrass-p3");
    auto sq = complete_square(W);
    auto el = eliminate_by_flat_base_change(sq.reduced, "a6");
    auto H = el.reduced;
    H.name = "elliptic-p3-reduced";
    return H;
}

HopfAlgebroidPresentation make_p2_reduced() {
    auto W = make_weierstrass(CoefficientRing::Zp(2), "weierstrass-p2");
    auto cc = complete_cube_p2(W);
    auto e4 = eliminate_by_flat_base_change(cc.reduced, "a4");
    auto e6 = eliminate_by_flat_base_change(e4.reduced, "a6");
    auto H = e6.reduced;
    H.name = "elliptic-p2-reduced";
    return H;
}

IdealSpec invariant_In(int p, int n) {
    IdealSpec I;
    I.contains_p = true;
    if (p == 3) {
        if (n >= 1) I.agens.push_back("a2");
        if (n >= 2) I.agens.push_back("a4");
    } else {
        if (n >= 1) I.agens.push_back("a1");
        if (n >= 2) I.agens.push_back("a3");
    }
    return I;
}

}  // namespace

HopfAlgebroidPresentation builtin_algebroid(const std::string& name) {
    static std::mutex mtx;
    static std::map<std::string, HopfAlgebroidPresentation> memo;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = memo.find(name);
        if (it != memo.end()) return it->second;
    }
    HopfAlgebroidPresentation H;
    if (name == "weierstrass-Z")
        H = make_weierstrass(CoefficientRing::Q(), name);
    else if (name == "weierstrass-p2")
        H = make_weierstrass(CoefficientRing::Zp(2), name);
    else if (name == "weierstrass-p3")
        H = make_weierstrass(CoefficientRing::Zp(3), name);
    else if (name == "elliptic-p3-reduced")
        H = make_p3_reduced();
    else if (name == "elliptic-p2-reduced")
        H = make_p2_reduced();
    else if (name.rfind("elliptic-p3-mod-I", 0) == 0 && name.size() == 18) {
        int n = name[17] - '0';
        if (n < 0 || n > 2) throw std::invalid_argument("unknown preset: " + name);
        H = quotient_by_invariant_ideal(builtin_algebroid("elliptic-p3-reduced"),
                                        invariant_In(3, n));
        H.name = name;
    } else if (name.rfind("elliptic-p2-mod-I", 0) == 0 && name.size() == 18) {
        int n = name[17] - '0';
        if (n < 0 || n > 2) throw std::invalid_argument("unknown preset: " + name);
        H = quotient_by_invariant_ideal(builtin_algebroid("elliptic-p2-reduced"),
                                        invariant_In(2, n));
        H.name = name;
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    std::lock_guard<std::mutex> lock(mtx);
    memo.emplace(name, H);
    return H;
}

InvariantCertificate is_invariant(const HopfAlgebroidPresentation& H, const IdealSpec& I) {
    InvariantCertificate cert;
    cert.invariant = true;
    int p = H.A.coeff.p;
    std::vector<int> igens;
    for (auto& nm : I.agens) igens.push_back(H.A.gen_index(nm));

    // I*Gamma is a monomial module over the monomial ideal (p, x_1..x_k), so
    // membership is decidable term by term.
    auto check_in_IGamma = [&](const Element& g, std::string& expl) {
        for (auto& t : g.terms) {
            bool ok = false;
            for (int gi : igens)
                if (t.first[gi] > 0) { ok = true; break; }
            if (!ok && I.contains_p && p > 0) {
                Rat c = t.second;
                if (mpz_divisible_ui_p(c.get_num().get_mpz_t(), (unsigned long)p) &&
                    c.get_den() == 1)
                    ok = true;
                if (H.A.coeff.kind == RingKind::PLocal &&
                    mpz_divisible_ui_p(c.get_num().get_mpz_t(), (unsigned long)p))
                    ok = true;
            }
            if (!ok) {
                expl = "term " + H.Gamma.to_string(H.Gamma.monomial(t.first, t.second)) +
                       " lies outside I*Gamma";
                return false;
            }
        }
        return true;
    };

    auto record = [&](const std::string& gen, const Element& img) {
        std::string expl;
        if (!check_in_IGamma(img, expl)) {
            cert.invariant = false;
            cert.offending = gen;
            cert.expressions.push_back({gen, expl});
            return false;
        }
        cert.expressions.push_back({gen, H.Gamma.to_string(img)});
        return true;
    };

    if (I.contains_p && p > 0) {
        if (!record("p", H.Gamma.constant(p))) return cert;
    }
    for (int gi : igens)
        if (!record(H.A.generators[gi].name, H.eta_R(H.A.gen(gi)))) return cert;
    return cert;
}

HopfAlgebroidPresentation quotient_by_invariant_ideal(const HopfAlgebroidPresentation& H,
                                                      const IdealSpec& I) {
    if (I.agens.empty() && !I.contains_p) return H;
    auto cert = is_invariant(H, I);
    if (!cert.invariant)
        throw std::invalid_argument("ideal is not invariant (offending generator: " +
                                    cert.offending + ")");

    CoefficientRing ring = H.A.coeff;
    if (I.contains_p) {
        if (ring.kind == RingKind::PLocal)
            ring = CoefficientRing::Fp(ring.p);
        else if (ring.kind != RingKind::PrimeField)
            throw std::invalid_argument("cannot reduce rational coefficients mod p");
    }

    std::vector<int> drop(H.Gamma.ngens(), 0);
    for (auto& nm : I.agens) drop[H.A.gen_index(nm)] = 1;

    std::vector<Generator> agens, ggens;
    for (int i = 0; i < H.n_agens; ++i)
        if (!drop[i]) agens.push_back(H.A.generators[i]);
    for (int i = 0; i < H.Gamma.ngens(); ++i)
        if (!drop[i]) ggens.push_back(H.Gamma.generators[i]);

    HopfAlgebroidPresentation R;
    R.name = H.name + "/I";
    R.A = AlgebraPresentation(agens, ring);
    R.Gamma = AlgebraPresentation(ggens, ring);
    R.n_agens = (int)agens.size();

    std::vector<Element> proj(H.Gamma.ngens());
    for (int i = 0; i < H.Gamma.ngens(); ++i)
        proj[i] = drop[i] ? R.Gamma.constant(0) : R.Gamma.gen(H.Gamma.generators[i].name);
    std::vector<Element> projA(H.A.ngens());
    for (int i = 0; i < H.A.ngens(); ++i)
        projA[i] = drop[i] ? R.A.constant(0) : R.A.gen(H.A.generators[i].name);

    for (int i = 0; i < H.Gamma.ngens(); ++i) {
        if (!H.Gamma.rules[i]) continue;
        Element tail = H.Gamma.map_through(H.Gamma.make(H.Gamma.rules[i]->tail), R.Gamma, proj);
        R.Gamma.add_rule(H.Gamma.generators[i].name, H.Gamma.rules[i]->power, tail);
    }
    for (int i = 0; i < H.n_agens; ++i) {
        if (drop[i]) continue;
        R.eta_R_gen.push_back(H.Gamma.map_through(H.eta_R(H.A.gen(i)), R.Gamma, proj));
    }
    for (int i = H.n_agens; i < H.Gamma.ngens(); ++i) {
        Tensor2 out;
        for (auto& [k, c] : H.psi(H.Gamma.gen(i)).terms) {
            Element cg = H.A.map_through(c, R.A, projA);
            if (cg.is_zero()) continue;
            Element lx = H.Gamma.map_through(H.Gamma.monomial(k.first), R.Gamma, proj);
            Element rx = H.Gamma.map_through(H.Gamma.monomial(k.second), R.Gamma, proj);
            out = R.tensor_add(out, R.tensor_term(cg, lx, rx));
        }
        R.psi_gen.push_back(out);
        R.epsilon_gen.push_back(H.A.map_through(H.epsilon_gen[i - H.n_agens], R.A, projA));
    }

    if (H.gamma_finite_free) {
        R.gamma_finite_free = true;
        R.gamma_basis = H.gamma_basis;  // same extra-generator layout? remap below
        R.gamma_basis.clear();
        std::function<void(int, Expo)> rec = [&](int gi, Expo cur) {
            if (gi >= R.Gamma.ngens()) { R.gamma_basis.push_back(cur); return; }
            if (gi < R.n_agens) { rec(gi + 1, cur); return; }
            int bound = R.Gamma.rules[gi] ? R.Gamma.rules[gi]->power : 1;
            for (int e = 0; e < bound; ++e) {
                cur[gi] = (uint8_t)e;
                rec(gi + 1, cur);
            }
        };
        rec(0, expo_zero());
        MonomialOrder ord{&R.Gamma};
        std::sort(R.gamma_basis.begin(), R.gamma_basis.end(), ord);
    }
    return R;
}

}  // namespace hopfext
