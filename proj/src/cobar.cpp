#include "cobar.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hopfext {

Slot pack_slot(const HopfAlgebroidPresentation& H, const Expo& pure) {
    Slot s = 0;
    int shift = 0;
    for (int i = H.n_agens; i < H.Gamma.ngens(); ++i) {
        s |= (Slot)pure[i] << shift;
        shift += 8;
    }
    return s;
}

Expo unpack_slot(const HopfAlgebroidPresentation& H, Slot s) {
    Expo e{};
    int shift = 0;
    for (int i = H.n_agens; i < H.Gamma.ngens(); ++i) {
        e[i] = (uint8_t)((s >> shift) & 0xff);
        shift += 8;
    }
    return e;
}

CobarElement Cobar::word(const Element& coeff, const Word& w) const {
    CobarElement out;
    if (!coeff.is_zero()) out.terms[w] = coeff;
    return out;
}

CobarElement Cobar::add(const CobarElement& a, const CobarElement& b) const {
    CobarElement out = a;
    for (auto& [w, c] : b.terms) {
        auto it = out.terms.find(w);
        if (it == out.terms.end())
            out.terms[w] = c;
        else {
            it->second = H->A.add(it->second, c);
            if (it->second.is_zero()) out.terms.erase(it);
        }
    }
    return out;
}

CobarElement Cobar::scale(const CobarElement& a, const Rat& c) const {
    CobarElement out;
    for (auto& [w, v] : a.terms) {
        Element s = H->A.scale(v, c);
        if (!s.is_zero()) out.terms[w] = s;
    }
    return out;
}

CobarElement Cobar::migrate(const Element& c, Word w, int pos) const {
    CobarElement out;
    struct Item {
        Element c;
        Word w;
        int pos;
    };
    std::vector<Item> work{{c, std::move(w), pos}};
    while (!work.empty()) {
        Item it = std::move(work.back());
        work.pop_back();
        if (it.c.is_zero()) continue;
        if (it.pos == 0) {
            auto f = out.terms.find(it.w);
            if (f == out.terms.end())
                out.terms[it.w] = it.c;
            else {
                f->second = H->A.add(f->second, it.c);
                if (f->second.is_zero()) out.terms.erase(f);
            }
            continue;
        }
        // slot at pos-1 absorbs eta_R(c)
        Expo left = unpack_slot(*H, it.w[it.pos - 1]);
        Element moved = H->Gamma.multiply(H->Gamma.monomial(left), H->eta_R(it.c));
        for (auto& [c2, g2] : H->split(moved)) {
            if (expo_is_one(g2)) continue;  // unit slot: the word degenerates
            Word w2 = it.w;
            w2[it.pos - 1] = pack_slot(*H, g2);
            work.push_back({c2, std::move(w2), it.pos - 1});
        }
    }
    return out;
}

CobarElement Cobar::mul(const CobarElement& a, const CobarElement& b) const {
    CobarElement out;
    for (auto& [wa, ca] : a.terms)
        for (auto& [wb, cb] : b.terms) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            CobarElement part = migrate(cb, std::move(w), (int)wa.size());
            for (auto& [pw, pc] : part.terms) {
                Element v = H->A.multiply(ca, pc);
                if (v.is_zero()) continue;
                auto f = out.terms.find(pw);
                if (f == out.terms.end())
                    out.terms[pw] = v;
                else {
                    f->second = H->A.add(f->second, v);
                    if (f->second.is_zero()) out.terms.erase(f);
                }
            }
        }
    return out;
}

CobarElement Cobar::d(const CobarElement& x) const {
    CobarElement out;
    for (auto& [w, c] : x.terms) {
        // left coaction term: [eta_R(c) - eta_L(c) | w]
        Element etabar = H->Gamma.sub(H->eta_R(c), H->eta_L(c));
        for (auto& [c0, g0] : H->split(etabar)) {
            if (expo_is_one(g0)) continue;  // cannot happen: eps(etabar) = 0
            Word w2;
            w2.reserve(w.size() + 1);
            w2.push_back(pack_slot(*H, g0));
            w2.insert(w2.end(), w.begin(), w.end());
            out = add(out, word(c0, w2));
        }
        // reduced diagonal in each slot, alternating signs
        for (size_t i = 0; i < w.size(); ++i) {
            const Tensor2& pb = H->psibar_basis(unpack_slot(*H, w[i]));
            Rat sign((i + 1) % 2 == 0 ? 1 : -1);
            for (auto& [k, kc] : pb.terms) {
                if (expo_is_one(k.first) || expo_is_one(k.second)) continue;
                Word w2;
                w2.reserve(w.size() + 1);
                w2.insert(w2.end(), w.begin(), w.begin() + i);
                w2.push_back(pack_slot(*H, k.first));
                w2.push_back(pack_slot(*H, k.second));
                w2.insert(w2.end(), w.begin() + i + 1, w.end());
                // kc sits at boundary i, scaled by the outer coefficient
                CobarElement part = migrate(kc, std::move(w2), (int)i);
                for (auto& [pw, pc] : part.terms) {
                    Element v = H->A.scale(H->A.multiply(c, pc), sign);
                    if (v.is_zero()) continue;
                    auto f = out.terms.find(pw);
                    if (f == out.terms.end())
                        out.terms[pw] = v;
                    else {
                        f->second = H->A.add(f->second, v);
                        if (f->second.is_zero()) out.terms.erase(f);
                    }
                }
            }
        }
    }
    return out;
}

int Cobar::word_degree(const Word& w) const {
    int d = 0;
    for (auto s : w) d += H->Gamma.degree_of(unpack_slot(*H, s));
    return d;
}

int Cobar::degree(const CobarElement& x) const {
    int d = -1;
    for (auto& [w, c] : x.terms) {
        int cd = c.homogeneous_degree(H->A);
        if (cd < 0) return -1;
        int td = cd + word_degree(w);
        if (d < 0) d = td;
        else if (d != td) return -1;
    }
    return d;
}

int Cobar::filtration(const CobarElement& x) const {
    int s = -1;
    for (auto& [w, c] : x.terms) {
        if (s < 0) s = (int)w.size();
        else if (s != (int)w.size()) return -1;
    }
    return s;
}

std::string Cobar::to_string(const CobarElement& x) const {
    if (x.terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto& [w, c] : x.terms) {
        if (!first) out << " + ";
        first = false;
        std::string cs = H->A.to_string(c);
        if (cs != "1") out << "(" << cs << ")*";
        out << "[";
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) out << "|";
            out << H->Gamma.monomial_string(unpack_slot(*H, w[i]));
        }
        out << "]";
    }
    return out.str();
}

CobarElement Cobar::parse(const std::string& text) const {
    // terms separated by + or - at top level; each: [expr|expr|...] with an
    // optional leading coefficient expression, '*' optional
    CobarElement out;
    size_t i = 0;
    Rat sign(1);
    auto skipws = [&] { while (i < text.size() && isspace((unsigned char)text[i])) ++i; };
    while (true) {
        skipws();
        if (i >= text.size()) break;
        if (text[i] == '+') { sign = 1; ++i; continue; }
        if (text[i] == '-') { sign = -1; ++i; continue; }
        std::string coefstr;
        while (i < text.size() && text[i] != '[') coefstr += text[i++];
        while (!coefstr.empty() && (coefstr.back() == '*' || isspace((unsigned char)coefstr.back())))
            coefstr.pop_back();
        if (i >= text.size() || text[i] != '[') throw std::invalid_argument("expected '['");
        ++i;
        std::vector<std::string> slots{""};
        while (i < text.size() && text[i] != ']') {
            if (text[i] == '|') slots.push_back("");
            else slots.back() += text[i];
            ++i;
        }
        if (i >= text.size()) throw std::invalid_argument("expected ']'");
        ++i;
        Element coeff = coefstr.empty() ? H->A.constant(sign)
                                        : H->A.scale(H->A.parse(coefstr), sign);
        // slots may be sums of monomials: expand distributively
        CobarElement term = word(coeff, {});
        Cobar cb(*H);
        for (auto& sstr : slots) {
            if (sstr.empty() || sstr == "1") continue;
            Element ge = H->Gamma.parse(sstr);
            CobarElement slotsum;
            for (auto& [c2, g2] : H->split(ge)) {
                if (expo_is_one(g2)) continue;  // project to ker(eps)
                slotsum = cb.add(slotsum, cb.word(c2, {pack_slot(*H, g2)}));
            }
            term = cb.mul(term, slotsum);
        }
        out = add(out, term);
        sign = 1;
    }
    return out;
}

std::vector<Cobar::BasisElt> Cobar::basis(int s, int t) const {
    std::vector<BasisElt> out;
    // per-degree non-unit slot monomials
    int maxd = t;
    std::vector<std::vector<Expo>> slots_by_deg(maxd + 1);
    for (int d = 2; d <= maxd; d += 2) slots_by_deg[d] = H->gamma_basis_in_degree(d);
    Word cur(s);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == s) {
            for (auto& am : H->A.basis_in_degree(rem)) out.push_back({am, cur});
            return;
        }
        for (int d = 2; d <= rem - 2 * (s - 1 - pos); d += 2) {
            for (auto& g : slots_by_deg[d]) {
                cur[pos] = pack_slot(*H, g);
                rec(pos + 1, rem - d);
            }
        }
    };
    if (s == 0) {
        for (auto& am : H->A.basis_in_degree(t)) out.push_back({am, {}});
        return out;
    }
    if (t >= 0) rec(0, t);
    return out;
}

long Cobar::basis_size(int s, int t) const {
    // counts only; mirrors basis() order-independently
    std::vector<long> acnt(t + 1, 0), gcnt(t + 1, 0);
    for (int d = 0; d <= t; ++d) acnt[d] = (long)H->A.basis_in_degree(d).size();
    for (int d = 2; d <= t; d += 2) gcnt[d] = (long)H->gamma_basis_in_degree(d).size();
    // words[k][m] = number of k-slot words of degree m
    std::vector<std::vector<long>> words(s + 1, std::vector<long>(t + 1, 0));
    words[0][0] = 1;
    for (int k = 1; k <= s; ++k)
        for (int m = 0; m <= t; ++m) {
            long acc = 0;
            for (int d = 2; d <= m; d += 2)
                if (gcnt[d] && words[k - 1][m - d]) acc += gcnt[d] * words[k - 1][m - d];
            words[k][m] = acc;
        }
    long total = 0;
    for (int m = 0; m <= t; ++m)
        if (words[s][m]) total += words[s][m] * acnt[t - m];
    return total;
}

CobarElement Cobar::from_basis(const BasisElt& b) const {
    return word(H->A.monomial(b.amono), b.w);
}

std::vector<std::pair<size_t, Rat>> Cobar::coordinates(
    const CobarElement& x, const std::vector<BasisElt>& basis) const {
    std::map<std::pair<Word, Expo>, size_t> index;
    for (size_t i = 0; i < basis.size(); ++i) index[{basis[i].w, basis[i].amono}] = i;
    std::vector<std::pair<size_t, Rat>> out;
    for (auto& [w, c] : x.terms)
        for (auto& tcoef : c.terms) {
            auto it = index.find({w, tcoef.first});
            if (it == index.end())
                throw std::runtime_error("cobar element has a term outside the basis");
            out.push_back({it->second, tcoef.second});
        }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace hopfext
