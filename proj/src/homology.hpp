#pragma once

#include "cobar.hpp"
#include "sparsemat.hpp"

#include <map>
#include <memory>
#include <optional>

namespace hopfext {

// one bidegree of an Ext chart: cyclic summands (0 = free, e > 0 means p^e)
// with named generators
struct BidegreeGroup {
    int s = 0, t = 0;
    std::vector<long> orders;
    std::vector<std::string> names;
    bool complete = true;
};

struct ProductEntry {
    std::string a, b;
    std::string result;  // polynomial in class names, "0" for zero
};

struct ExtChart {
    CoefficientRing coeff;
    int s_max = 0, t_max = 0;
    std::map<std::pair<int, int>, BidegreeGroup> groups;
    std::vector<ProductEntry> products;
    std::vector<std::string> flags;

    const BidegreeGroup* at(int s, int t) const {
        auto it = groups.find({s, t});
        return it == groups.end() ? nullptr : &it->second;
    }
    long dim_at(int s, int t) const {
        auto* g = at(s, t);
        return g ? (long)g->orders.size() : 0;
    }
};

// Exact cohomology of a Hopf algebroid presentation from its cobar complex.
// Bidegrees are independent; results are cached.
class CobarHomology {
public:
    explicit CobarHomology(const HopfAlgebroidPresentation& H)
        : H_(&H), cb_(H) {}

    const Cobar& cobar() const { return cb_; }
    const HopfAlgebroidPresentation& algebroid() const { return *H_; }

    struct Group {
        std::vector<long> orders;          // 0 free, else exponent of p
        std::vector<CobarElement> reps;    // one per summand (may be empty:
                                           // orders computed by rank profile)
        bool has_reps = false;
    };

    // H^{s,t}; throws if the bidegree exceeds the dimension cap
    const Group& group(int s, int t);

    // largest column dimension the engine will eliminate
    long dimension_cap = 200000;
    // largest dimension for representative extraction over Z_(p)
    long representative_cap = 900;
    // exact eta_R re-verification bound for the derivation route
    int invariant_verify_limit = 28;
    bool feasible(int s, int t) const;

    // class of a cocycle: coordinates over the generators of H^{s,t}
    // (empty for the zero class); throws if z is not a cocycle
    std::vector<Rat> reduce_cocycle(const CobarElement& z, int s, int t);

    // is z a coboundary?  if so return u with d(u) = z
    std::optional<CobarElement> bound(const CobarElement& z, int s, int t);

    // p-divisibility of a class: find (w, u) with z = p^k w + d(u); works in
    // any bidegree within the dimension cap, with no representative data
    std::optional<std::pair<CobarElement, CobarElement>> decompose_divisible(
        const CobarElement& z, int s, int t, int k);

    // debug dump of a bidegree: basis and differential matrix
    std::string dump_bidegree(int s, int t);

private:
    struct BasisIndex {
        std::map<std::pair<Word, Expo>, uint32_t> index;
        std::vector<Cobar::BasisElt> elts;
    };
    struct Bidegree {
        std::shared_ptr<BasisIndex> basis;   // of C^{s,t}
        Group grp;
        // image-only echelon (for bounding solves) and image+representatives
        // echelon (for class coordinates); companions are labeled by
        // C^{s-1,t} basis index, resp. prev_cols + representative index
        std::shared_ptr<IEchelon> image;
        std::shared_ptr<IEchelon> full;
        uint32_t prev_cols = 0;  // number of C^{s-1,t} basis elements
    };

    const HopfAlgebroidPresentation* H_;
    Cobar cb_;
    std::map<std::pair<int, int>, Bidegree> cache_;
    std::mutex mtx_;

    std::shared_ptr<BasisIndex> basis_index(int s, int t);
    std::map<std::pair<int, int>, std::shared_ptr<BasisIndex>> bcache_;

    // rank and diagonal valuations of d^{s,t}
    struct DiffProfile {
        int rank = 0;
        std::vector<long> exps;
    };
    const DiffProfile& diff_profile(int s, int t);
    std::map<std::pair<int, int>, DiffProfile> dprof_;

    SparseMatrix build_diff(int s, int t);  // matrix of d^{s,t}, interned rows

    Bidegree& compute(int s, int t);
    void invariants_by_derivations(Bidegree& bd, int t);  // s = 0, rational ring
    SpVec coords(const CobarElement& x, const BasisIndex& B) const;
    CobarElement from_coords(const SpVec& v, const BasisIndex& B) const;
};

}  // namespace hopfext
