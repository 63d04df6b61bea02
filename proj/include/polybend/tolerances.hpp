#pragma once

namespace polybend {

// One record for every numerical band in the library.  Relative bands are
// scaled by the polygon perimeter unless stated otherwise.
struct Tolerances {
    double kernel = 1e-12;       // geometric kernel identities (unit axes, norms)
    double symplectic = 1e-9;    // derived symplectic quantities
    double unit_repair = 1e-9;   // edges this close to unit length get renormalized
    double closing = 1e-10;      // closing defect, relative to the perimeter
    double tangency = 1e-10;     // <u^i, X^i> and infinitesimal closing
    double collinear = 1e-10;    // stratum detection |u^i x u^1|
    double equality = 1e-10;     // triangle equalities and zero diagonals, relative
    double rank = 1e-8;          // singular values below rank * sigma_max are zero
    double isotropy = 1e-8;      // certify_isotropy pass threshold
    double graph = 1e-10;        // absolute equality band for the fiber graph
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

}  // namespace polybend
