#pragma once

#include "hopf.hpp"

namespace hopfext {

// Witnessed simplifications of the Weierstrass algebroid.  Each returns the
// new presentation together with the maps that certify the step; the maps are
// machine-checked at construction time.

struct SquareCompletion {
    HopfAlgebroidPresentation reduced;   // (A~, A~[r]) with A~ = k[a2,a4,a6]
    std::vector<Element> f;              // A -> A~ on generators (kills a1, a3)
    std::vector<Element> g;              // A~ -> A on generators
    std::vector<Element> c;              // Gamma -> A on extra generators (A-linear)
    std::vector<std::string> checks;     // witness identities verified
};

struct CubeCompletion {
    HopfAlgebroidPresentation reduced;
    // p=2 route: records the induced substitution for the eliminated r
    std::string substitution;
    std::vector<std::string> checks;
};

struct Elimination {
    HopfAlgebroidPresentation reduced;
    std::string witness;       // the monic image of the killed generator
    std::string monic_in;      // the Gamma generator it is monic in
    int monic_power = 0;
    std::vector<std::string> checks;
};

// requires 2 invertible in H's coefficient ring; H must be a Weierstrass-type
// presentation (generators a1,a2,a3,a4,a6,r,s,t)
SquareCompletion complete_square(const HopfAlgebroidPresentation& H);

// requires 3 invertible.  If 2 is also invertible, pass the square-completed
// presentation and obtain the discrete algebroid; at p=2 pass the Weierstrass
// presentation and obtain (Z_(2)[a1,a3,a4,a6], A~[s,t]).
CubeCompletion complete_cube_after_square(const SquareCompletion& sq);
CubeCompletion complete_cube_p2(const HopfAlgebroidPresentation& H);

// base change killing one base generator whose eta_R image is monic in a
// single Gamma generator; refuses otherwise
Elimination eliminate_by_flat_base_change(const HopfAlgebroidPresentation& H,
                                          const std::string& kill);

}  // namespace hopfext
