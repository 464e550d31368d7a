#pragma once

#include "hopf.hpp"

#include <cstdint>
#include <map>

namespace hopfext {

// A slot is a non-unit Gamma-basis monomial (exponents of the extra
// generators), packed into a uint64 for compact word keys.
using Slot = uint64_t;
using Word = std::vector<Slot>;

Slot pack_slot(const HopfAlgebroidPresentation& H, const Expo& pure);
Expo unpack_slot(const HopfAlgebroidPresentation& H, Slot s);

// Element of the reduced cobar complex: sum of A-coefficients times bar words
// a*[g1|...|gs].  All A-coefficients are stored at the far left; moving a
// coefficient across a slot boundary rewrites the slot by eta_R.
struct CobarElement {
    std::map<Word, Element> terms;
    bool is_zero() const { return terms.empty(); }
    bool operator==(const CobarElement&) const = default;
};

struct Cobar {
    const HopfAlgebroidPresentation* H;

    explicit Cobar(const HopfAlgebroidPresentation& h) : H(&h) {}

    CobarElement zero() const { return {}; }
    CobarElement word(const Element& coeff, const Word& w) const;
    CobarElement add(const CobarElement& a, const CobarElement& b) const;
    CobarElement scale(const CobarElement& a, const Rat& c) const;
    CobarElement mul(const CobarElement& a, const CobarElement& b) const;

    // move coefficient c sitting at slot boundary `pos` (just left of
    // w[pos]) out to the far left
    CobarElement migrate(const Element& c, Word w, int pos) const;

    // the cobar differential
    CobarElement d(const CobarElement& x) const;

    int word_degree(const Word& w) const;
    int degree(const CobarElement& x) const;  // internal degree, -1 if mixed
    int filtration(const CobarElement& x) const;  // word length, -1 if mixed

    std::string to_string(const CobarElement& x) const;
    CobarElement parse(const std::string& text) const;  // c1*[m|m|...] + ...

    // basis of C^{s,t}: pairs (A-monomial, word); deterministic order
    struct BasisElt {
        Expo amono;
        Word w;
    };
    std::vector<BasisElt> basis(int s, int t) const;
    long basis_size(int s, int t) const;  // count without materializing

    CobarElement from_basis(const BasisElt& b) const;

    // coordinates of x in the (s,t) basis; throws if x has a term outside
    std::vector<std::pair<size_t, Rat>> coordinates(const CobarElement& x,
                                                    const std::vector<BasisElt>& basis) const;
};

}  // namespace hopfext
