#pragma once

#include "unirat/alphabet.hpp"
#include "unirat/poly.hpp"

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace unirat {

/// One rational curve in the singular locus of the branch octic: the common
/// zero locus of the defining pair, together with a verified rational
/// parametrization (s:u) -> P^3 of degree <= 1 per coordinate for lines and
/// <= 2 for conics.
struct CurveComponent {
    std::string label; // "B_{1,2}", "B_{3,6}^1", ...
    MultiPoly g1, g2;  // defining pair, in (x,y,z,t)
    std::array<MultiPoly, 4> param; // coordinates in the parameter ring (s,u)
    enum class Kind { Line, Conic } kind = Kind::Line;

    /// Point at parameter (s:u), as integer coordinates.
    std::vector<long> point_at(long s, long u) const;
};

/// The 18 rational curves of the singular locus, with the split components
/// of B_{3,6}, B_{4,5}, B_{5,6} labelled to match the incidence table.
/// Every parametrization and every split identity is verified exactly on
/// construction; a failure throws.
std::vector<CurveComponent> curve_catalog();

struct IncidenceRow {
    std::vector<long> point; // 4 integer coordinates
    unsigned multiplicity;   // multiplicity of the octic B at the point
    std::vector<std::string> surfaces; // components through the point
    std::vector<std::string> curves;   // catalog curves through the point
};

/// One row per query point: which of B1..B6 vanish, which catalog curves
/// pass through, and the multiplicity of the full octic at the point (a node
/// of a quadric component counts twice, so this can exceed the surface
/// count).
std::vector<IncidenceRow> incidence_table(const std::array<MultiPoly, 6>& surfaces,
                                          const std::vector<std::vector<long>>& points,
                                          const std::vector<CurveComponent>& curves);

/// The 16 intersection points of the catalog curves, in table order.
std::vector<std::vector<long>> table1_points();

struct CurveOrders {
    std::vector<unsigned> per_component;
    unsigned total;
};

/// Vanishing order of each divisor component along the curve, computed by
/// restricting to a random transversal 2-plane at a sample point and taking
/// the multiplicity at that point; the reported order is the minimum over
/// `samples` distinct sample points. Sample parameters are small integers,
/// skipping the table points where multiplicities jump; planes come from a
/// fixed-seed generator so runs are reproducible.
CurveOrders mult_along_curve(std::span<const MultiPoly> divisors, const CurveComponent& curve,
                             int samples = 3);

struct BlowupLedgerEntry {
    std::string center;                    // curve label
    std::map<std::string, unsigned> orders; // B_i -> vanishing order along the center
    unsigned total;
};

/// The five blow-up centers in resolution order (B_{1,6}, B_{2,5},
/// B_{5,6}^1, B_{3,6}^1, B_{4,5}^1), each measured against the original six
/// branch components. Throws if any total differs from 2.
std::vector<BlowupLedgerEntry> blowup_ledger();

/// Blow-up of P^3 along a codimension-2 linear center {l1 = l2 = 0},
/// presented in the two standard charts. After the linear change of
/// coordinates sending the center to {x = u = 0}, chart 0 substitutes
/// u = v*x and chart 1 substitutes x = v*u; the total transform factors as
/// (exceptional coordinate)^m * strict with m maximal.
struct ChartBlowup {
    RingPtr chart_ring;   // (x, u, z, t, v); chart 0 avoids u, chart 1 avoids x
    MultiPoly chart0_total, chart0_strict;
    MultiPoly chart1_total, chart1_strict;
    unsigned exceptional_multiplicity;
};

ChartBlowup chart_blowup_linear(const MultiPoly& p, const MultiPoly& l1, const MultiPoly& l2);

/// JSON (array of row objects) and markdown renderings of an incidence
/// table.
std::string incidence_to_json(const std::vector<IncidenceRow>& rows);
std::string incidence_to_markdown(const std::vector<IncidenceRow>& rows);

} // namespace unirat
