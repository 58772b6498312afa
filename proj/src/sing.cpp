#include "unirat/sing.hpp"

#include "unirat/parser.hpp"

#include <json.hpp>

#include <random>
#include <sstream>

namespace unirat {

namespace {

RingPtr param_ring() {
    static RingPtr ring = Ring::make({"s", "u"});
    return ring;
}

RingPtr plane_ring() {
    static RingPtr ring = Ring::make({"a", "b"});
    return ring;
}

MultiPoly param_of(const char* text) { return parse_poly(text, param_ring()); }

CurveComponent make_curve(const AlphabetFixture& fx, std::string label, const char* g1,
                          const char* g2, CurveComponent::Kind kind, const char* px,
                          const char* py, const char* pz, const char* pt) {
    CurveComponent c;
    c.label = std::move(label);
    c.g1 = parse_poly(g1, fx.ring);
    c.g2 = parse_poly(g2, fx.ring);
    c.kind = kind;
    c.param = {param_of(px), param_of(py), param_of(pz), param_of(pt)};
    return c;
}

void verify_curve(const CurveComponent& c) {
    unsigned max_deg = c.kind == CurveComponent::Kind::Line ? 1 : 2;
    bool nonzero = false;
    for (const auto& coord : c.param) {
        if (!coord.is_zero()) {
            nonzero = true;
            if (*coord.total_degree() > max_deg)
                throw Error("curve " + c.label + ": parametrization degree too high");
            if (!coord.is_homogeneous())
                throw Error("curve " + c.label + ": parametrization not homogeneous");
        }
    }
    if (!nonzero) throw Error("curve " + c.label + ": empty parametrization");

    PolyMap restrict(c.g1.ring(), param_ring(),
                     {c.param[0], c.param[1], c.param[2], c.param[3]});
    if (!restrict.apply(c.g1).is_zero() || !restrict.apply(c.g2).is_zero())
        throw Error("curve " + c.label + ": parametrization does not satisfy the equations");
}

bool same_projective_point(const std::vector<long>& a, const std::vector<long>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
}

} // namespace

std::vector<long> CurveComponent::point_at(long s, long u) const {
    std::vector<Rat> at{Rat(s), Rat(u)};
    std::vector<long> out(4);
    for (int i = 0; i < 4; ++i) {
        Rat v = param[i].evaluate(at);
        if (v.get_den() != 1) throw Error("non-integer parametrization value");
        if (!v.get_num().fits_slong_p()) throw Error("parametrization value overflow");
        out[i] = v.get_num().get_si();
    }
    return out;
}

std::vector<CurveComponent> curve_catalog() {
    AlphabetFixture fx = build_fixture();
    const char* B5 = "y*z - (x - t)^2";
    const char* B6 = "x*z - (y - t)^2";
    using K = CurveComponent::Kind;

    std::vector<CurveComponent> curves;
    curves.push_back(make_curve(fx, "B_{1,2}", "x", "y", K::Line, "0", "0", "s", "u"));
    curves.push_back(make_curve(fx, "B_{1,3}", "x", "x - z", K::Line, "0", "s", "0", "u"));
    curves.push_back(make_curve(fx, "B_{1,4}", "x", "y - z", K::Line, "0", "s", "s", "u"));
    curves.push_back(make_curve(fx, "B_{1,5}", "x", B5, K::Conic, "0", "s^2", "u^2", "s*u"));
    // B1 and B6 are tangent along this line; the reduced curve is cut by
    // linear forms even though the scheme intersection is a double line.
    curves.push_back(make_curve(fx, "B_{1,6}", "x", "y - t", K::Line, "0", "s", "u", "s"));
    curves.push_back(make_curve(fx, "B_{2,3}", "y", "x - z", K::Line, "s", "0", "s", "u"));
    curves.push_back(make_curve(fx, "B_{2,4}", "y", "y - z", K::Line, "s", "0", "0", "u"));
    curves.push_back(make_curve(fx, "B_{2,5}", "y", "x - t", K::Line, "s", "0", "u", "s"));
    curves.push_back(make_curve(fx, "B_{2,6}", "y", B6, K::Conic, "s^2", "0", "u^2", "s*u"));
    curves.push_back(make_curve(fx, "B_{3,4}", "x - z", "y - z", K::Line, "s", "s", "s", "u"));
    curves.push_back(make_curve(fx, "B_{3,5}", "x - z", B5, K::Conic,
                                "s^2", "u^2", "s^2", "s*(s - u)"));
    curves.push_back(make_curve(fx, "B_{3,6}^1", "x - z", "x + y - t", K::Line,
                                "s", "u", "s", "s + u"));
    curves.push_back(make_curve(fx, "B_{3,6}^2", "x - z", "x - y + t", K::Line,
                                "s", "u", "s", "u - s"));
    curves.push_back(make_curve(fx, "B_{4,5}^1", "y - z", "x + y - t", K::Line,
                                "s", "u", "u", "s + u"));
    curves.push_back(make_curve(fx, "B_{4,5}^2", "y - z", "x - y - t", K::Line,
                                "s", "u", "u", "s - u"));
    curves.push_back(make_curve(fx, "B_{4,6}", "y - z", B6, K::Conic,
                                "u^2", "s^2", "s^2", "s*(s - u)"));
    curves.push_back(make_curve(fx, "B_{5,6}^1", "x + y + z - 2*t", B5, K::Conic,
                                "u^2", "s^2", "(s + u)^2", "s^2 + s*u + u^2"));
    curves.push_back(make_curve(fx, "B_{5,6}^2", "x - y", B5, K::Conic,
                                "s^2", "s^2", "u^2", "s*(s - u)"));

    for (const auto& c : curves) verify_curve(c);

    // Split identities behind the ^1/^2 components, checked by expansion:
    // B6 on {x=z} factors into the two B_{3,6} lines, B5 on {y=z} into the
    // two B_{4,5} lines, and B5 - B6 = (y-x)(x+y+z-2t) splits B_{5,6}.
    const RingPtr& R = fx.ring;
    auto parse = [&](const char* s) { return parse_poly(s, R); };
    auto var = [&](std::size_t i) { return MultiPoly::variable(R, i); };
    PolyMap onto_x_eq_z(R, R, {var(0), var(1), var(0), var(3)});
    PolyMap onto_y_eq_z(R, R, {var(0), var(1), var(1), var(3)});
    if (onto_x_eq_z.apply(fx.branch[5]) != parse("(x + y - t)*(x - y + t)"))
        throw Error("B_{3,6} split identity failed");
    if (onto_y_eq_z.apply(fx.branch[4]) != parse("(x + y - t)*(y - x + t)"))
        throw Error("B_{4,5} split identity failed");
    if (fx.branch[4] - fx.branch[5] != parse("(y - x)*(x + y + z - 2*t)"))
        throw Error("B_{5,6} split identity failed");

    return curves;
}

std::vector<std::vector<long>> table1_points() {
    return {
        {1, 0, 0, 1},  {0, 1, 0, 1},  {0, -1, -1, 1}, {-1, 0, -1, 1},
        {1, 0, 0, 0},  {0, 1, 0, 0},  {0, 0, 1, 0},   {0, 0, 0, 1},
        {0, 1, 1, 1},  {1, 0, 1, 1},  {1, 1, 0, 1},   {1, 1, 1, 0},
        {1, 1, 1, 2},  {1, 1, 4, 3},  {1, 4, 1, 3},   {4, 1, 1, 3},
    };
}

std::vector<IncidenceRow> incidence_table(const std::array<MultiPoly, 6>& surfaces,
                                          const std::vector<std::vector<long>>& points,
                                          const std::vector<CurveComponent>& curves) {
    std::vector<IncidenceRow> rows;
    rows.reserve(points.size());
    for (const auto& pt : points) {
        std::vector<Rat> at;
        at.reserve(pt.size());
        for (long c : pt) at.emplace_back(c);

        IncidenceRow row;
        row.point = pt;
        row.multiplicity = 0;
        for (std::size_t i = 0; i < surfaces.size(); ++i) {
            if (surfaces[i].evaluate(at) == 0) {
                row.surfaces.push_back("B" + std::to_string(i + 1));
                row.multiplicity += multiplicity_at_point(surfaces[i], pt);
            }
        }
        for (const auto& c : curves) {
            if (c.g1.evaluate(at) == 0 && c.g2.evaluate(at) == 0)
                row.curves.push_back(c.label);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

// Sample points on the curve at small parameter values, skipping the table
// points (multiplicities jump there) and projectively repeated points.
std::vector<std::vector<long>> sample_points(const CurveComponent& curve, int samples) {
    auto table = table1_points();
    std::vector<std::vector<long>> out;
    for (long k = 0; static_cast<int>(out.size()) < samples; ++k) {
        if (k > 64) throw Error("could not find enough sample points on " + curve.label);
        long s = 1, u = k;
        std::vector<long> pt = curve.point_at(s, u);
        bool zero = true;
        for (long c : pt) zero &= (c == 0);
        if (zero) continue;
        bool bad = false;
        for (const auto& tp : table) bad |= same_projective_point(pt, tp);
        for (const auto& prev : out) bad |= same_projective_point(pt, prev);
        if (!bad) out.push_back(std::move(pt));
    }
    return out;
}

// Restriction of `divisor` to the affine 2-plane through `pt` spanned by
// directions v1, v2 in the chart of the last nonzero coordinate. Returns a
// polynomial in the plane coordinates (a, b) whose multiplicity at the
// origin is the quantity of interest.
MultiPoly restrict_to_plane(const MultiPoly& divisor, const std::vector<long>& pt,
                            const std::vector<long>& v1, const std::vector<long>& v2) {
    std::size_t chart = pt.size();
    for (std::size_t i = pt.size(); i-- > 0;)
        if (pt[i] != 0) { chart = i; break; }
    if (chart == pt.size()) throw Error("sample point is the origin");

    RingPtr pr = plane_ring();
    MultiPoly a = MultiPoly::variable(pr, 0);
    MultiPoly b = MultiPoly::variable(pr, 1);
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < pt.size(); ++i) {
        if (i == chart) {
            images.push_back(MultiPoly::constant(pr, Rat(1)));
        } else {
            Rat base = rational(Int(pt[i]), Int(pt[chart]));
            images.push_back(MultiPoly::constant(pr, base) + a.scaled(Rat(v1[i])) +
                             b.scaled(Rat(v2[i])));
        }
    }
    return PolyMap(divisor.ring(), pr, std::move(images)).apply(divisor);
}

} // namespace

CurveOrders mult_along_curve(std::span<const MultiPoly> divisors, const CurveComponent& curve,
                             int samples) {
    if (samples < 3) throw Error("need at least three sample points");
    auto points = sample_points(curve, samples);

    std::mt19937 rng(0x1607u); // fixed seed: reproducible transversal planes
    std::uniform_int_distribution<long> small(-9, 9);

    CurveOrders result;
    result.per_component.assign(divisors.size(), 0);
    std::vector<bool> seen(divisors.size(), false);

    for (const auto& pt : points) {
        for (std::size_t d = 0; d < divisors.size(); ++d) {
            unsigned order = 0;
            bool ok = false;
            for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
                std::vector<long> v1(4), v2(4);
                for (auto& c : v1) c = small(rng);
                for (auto& c : v2) c = small(rng);
                MultiPoly g = restrict_to_plane(divisors[d], pt, v1, v2);
                if (g.is_zero()) continue; // degenerate plane, resample
                order = g.min_total_degree();
                ok = true;
            }
            if (!ok)
                throw Error("degenerate transversal planes at every attempt on " + curve.label);
            if (!seen[d] || order < result.per_component[d]) result.per_component[d] = order;
            seen[d] = true;
        }
    }

    result.total = 0;
    for (unsigned o : result.per_component) result.total += o;
    return result;
}

std::vector<BlowupLedgerEntry> blowup_ledger() {
    AlphabetFixture fx = build_fixture();
    auto catalog = curve_catalog();
    auto find = [&](const std::string& label) -> const CurveComponent& {
        for (const auto& c : catalog)
            if (c.label == label) return c;
        throw Error("missing catalog curve " + label);
    };

    const char* centers[5] = {"B_{1,6}", "B_{2,5}", "B_{5,6}^1", "B_{3,6}^1", "B_{4,5}^1"};
    std::vector<BlowupLedgerEntry> ledger;
    for (const char* label : centers) {
        CurveOrders orders = mult_along_curve(std::span<const MultiPoly>(fx.branch), find(label));
        BlowupLedgerEntry entry;
        entry.center = label;
        for (std::size_t i = 0; i < 6; ++i)
            entry.orders["B" + std::to_string(i + 1)] = orders.per_component[i];
        entry.total = orders.total;
        if (entry.total != 2)
            throw Error("blow-up center " + entry.center + " has total multiplicity " +
                        std::to_string(entry.total) + ", expected 2");
        ledger.push_back(std::move(entry));
    }
    return ledger;
}

namespace {

unsigned min_exponent(const MultiPoly& p, std::size_t var) {
    unsigned m = 0;
    bool first = true;
    for (const auto& t : p.terms()) {
        if (first || t.exps[var] < m) m = t.exps[var];
        first = false;
    }
    return m;
}

MultiPoly strip_power(const MultiPoly& p, std::size_t var, unsigned m) {
    if (m == 0) return p;
    std::vector<Term> out = p.terms();
    for (auto& t : out) t.exps[var] -= m;
    return MultiPoly::from_terms(p.ring(), std::move(out));
}

std::vector<Rat> linear_coeffs(const MultiPoly& l) {
    auto deg = degree_info(l);
    if (deg.total_degree != 1u || !deg.homogeneous)
        throw Error("blow-up center must be cut by homogeneous linear forms");
    std::size_t n = l.ring()->size();
    std::vector<Rat> row(n, Rat(0));
    for (const auto& t : l.terms())
        for (std::size_t i = 0; i < n; ++i)
            if (t.exps[i] == 1) row[i] = t.coeff;
    return row;
}

// Gauss-Jordan inverse over Q; returns false when singular.
bool invert(std::vector<std::vector<Rat>> m, std::vector<std::vector<Rat>>& inv) {
    std::size_t n = m.size();
    inv.assign(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return false;
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        Rat lead = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= lead;
            inv[col][j] /= lead;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return true;
}

} // namespace

ChartBlowup chart_blowup_linear(const MultiPoly& p, const MultiPoly& l1, const MultiPoly& l2) {
    const RingPtr& src = p.ring();
    if (src->size() != 4) throw Error("chart blow-up expects the ambient (x,y,z,t) ring");
    if (!same_ring(src, l1.ring()) || !same_ring(src, l2.ring())) throw Error("ring mismatch");

    std::vector<Rat> r1 = linear_coeffs(l1), r2 = linear_coeffs(l2);

    // Complete {l1, l2} to a basis with two coordinate forms, preferring the
    // later variables so that z and t keep their names in the charts.
    std::vector<std::vector<Rat>> basis;
    std::vector<std::vector<Rat>> inverse;
    bool found = false;
    for (std::size_t i = 4; i-- > 0 && !found;) {
        for (std::size_t j = i; j-- > 0 && !found;) {
            // candidate new coordinates: (l1, l2, x_j, x_i) with j < i
            std::vector<std::vector<Rat>> m{r1, r2, std::vector<Rat>(4, Rat(0)),
                                            std::vector<Rat>(4, Rat(0))};
            m[2][j] = 1;
            m[3][i] = 1;
            if (invert(m, inverse)) {
                basis = std::move(m);
                found = true;
            }
        }
    }
    if (!found) throw Error("center forms are not independent");

    RingPtr chart = Ring::make({"x", "u", "z", "t", "v"});
    auto cvar = [&](std::size_t i) { return MultiPoly::variable(chart, i); };

    // old coordinate k = sum_j inverse[k][j] * (new coordinate j)
    std::vector<MultiPoly> to_chart;
    for (std::size_t k = 0; k < 4; ++k) {
        MultiPoly sum = MultiPoly::zero(chart);
        for (std::size_t j = 0; j < 4; ++j)
            if (inverse[k][j] != 0) sum = sum + cvar(j).scaled(inverse[k][j]);
        to_chart.push_back(std::move(sum));
    }
    MultiPoly centered = PolyMap(src, chart, std::move(to_chart)).apply(p);

    // chart 0: u = v*x ; chart 1: x = v*u
    PolyMap sub0(chart, chart, {cvar(0), cvar(4) * cvar(0), cvar(2), cvar(3), cvar(4)});
    PolyMap sub1(chart, chart, {cvar(4) * cvar(1), cvar(1), cvar(2), cvar(3), cvar(4)});

    ChartBlowup out;
    out.chart_ring = chart;
    out.chart0_total = sub0.apply(centered);
    out.chart1_total = sub1.apply(centered);

    unsigned m0 = min_exponent(out.chart0_total, 0);
    unsigned m1 = min_exponent(out.chart1_total, 1);
    if (m0 != m1) throw Error("chart multiplicities disagree"); // cannot happen for true centers
    out.exceptional_multiplicity = m0;
    out.chart0_strict = strip_power(out.chart0_total, 0, m0);
    out.chart1_strict = strip_power(out.chart1_total, 1, m1);
    return out;
}

std::string incidence_to_json(const std::vector<IncidenceRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row;
        row["point"] = r.point;
        row["multiplicity"] = r.multiplicity;
        row["surfaces"] = r.surfaces;
        row["curves"] = r.curves;
        arr.push_back(std::move(row));
    }
    return arr.dump(2);
}

std::string incidence_to_markdown(const std::vector<IncidenceRow>& rows) {
    std::ostringstream out;
    out << "| point | multiplicity | surfaces | curves |\n";
    out << "|---|---|---|---|\n";
    for (const auto& r : rows) {
        out << "| (";
        for (std::size_t i = 0; i < r.point.size(); ++i)
            out << (i ? ":" : "") << r.point[i];
        out << ") | " << r.multiplicity << " | ";
        for (std::size_t i = 0; i < r.surfaces.size(); ++i)
            out << (i ? ", " : "") << r.surfaces[i];
        out << " | ";
        for (std::size_t i = 0; i < r.curves.size(); ++i)
            out << (i ? ", " : "") << r.curves[i];
        out << " |\n";
    }
    return out.str();
}

} // namespace unirat
