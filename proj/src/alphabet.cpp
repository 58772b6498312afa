#include "unirat/alphabet.hpp"

#include "unirat/parser.hpp"

namespace unirat {

namespace {

void push_check(std::vector<IdentityCheck>& out, const std::string& name,
                const MultiPoly& actual, const MultiPoly& expected) {
    bool ok = actual == expected;
    out.push_back(IdentityCheck{name, ok, ok ? "" : to_string(expected),
                                ok ? "" : to_string(actual)});
}

} // namespace

bool SymmetryReport::all_ok() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

bool SigmaReport::all_ok() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

AlphabetFixture build_fixture() {
    RingPtr ring = Ring::make({"x", "y", "z", "t"});
    auto parse = [&](const char* text) { return parse_poly(text, ring); };

    AlphabetFixture fx{
        ring,
        {
            parse("4*x - z"),
            parse("4*y - z"),
            parse("4*x^2*y - z*(y - t)^2"),
            parse("4*x*y^2 - z*(x - t)^2"),
            parse("(x - y)^2 - 2*(x + y)*t + t^2"),
            parse("(x - y)^2 - 2*(x + y)*(z + t) + (z + t)^2"),
        },
        MultiPoly(),
        PolyMap(ring, ring,
                {parse("x*z"), parse("y*z"), parse("4*x*y"), parse("t*z")}),
        {
            parse("x"),
            parse("y"),
            parse("x - z"),
            parse("y - z"),
            parse("y*z - (x - t)^2"),
            parse("x*z - (y - t)^2"),
        },
    };
    fx.f_product = fx.f[0] * fx.f[1] * fx.f[2] * fx.f[3];
    return fx;
}

SymmetryReport verify_symmetries(const AlphabetFixture& fx) {
    const RingPtr& ring = fx.ring;
    auto var = [&](std::size_t i) { return MultiPoly::variable(ring, i); };

    PolyMap swap_xy(ring, ring, {var(1), var(0), var(2), var(3)});
    PolyMap shift(ring, ring, {var(0), var(1), var(2), var(2) + var(3)});   // t -> z + t
    PolyMap unshift(ring, ring, {var(0), var(1), var(2), var(3) - var(2)}); // t -> t - z

    SymmetryReport report;
    auto& checks = report.checks;

    push_check(checks, "swap(f1) = f2", swap_xy.apply(fx.f[0]), fx.f[1]);
    push_check(checks, "swap(f2) = f1", swap_xy.apply(fx.f[1]), fx.f[0]);
    push_check(checks, "swap(f3) = f4", swap_xy.apply(fx.f[2]), fx.f[3]);
    push_check(checks, "swap(f4) = f3", swap_xy.apply(fx.f[3]), fx.f[2]);
    push_check(checks, "swap(f5) = f5", swap_xy.apply(fx.f[4]), fx.f[4]);
    push_check(checks, "swap(f6) = f6", swap_xy.apply(fx.f[5]), fx.f[5]);

    push_check(checks, "shift(f5) = f6", shift.apply(fx.f[4]), fx.f[5]);
    push_check(checks, "shift(f1) = f1", shift.apply(fx.f[0]), fx.f[0]);
    push_check(checks, "shift(f2) = f2", shift.apply(fx.f[1]), fx.f[1]);

    // The swap is an involution outright; the shift is an automorphism whose
    // inverse is t -> t-z. Both round-trip the whole alphabet.
    for (int i = 0; i < 6; ++i) {
        std::string fi = "f" + std::to_string(i + 1);
        push_check(checks, "swap(swap(" + fi + ")) = " + fi,
                   swap_xy.apply(swap_xy.apply(fx.f[i])), fx.f[i]);
        push_check(checks, "unshift(shift(" + fi + ")) = " + fi,
                   unshift.apply(shift.apply(fx.f[i])), fx.f[i]);
    }
    push_check(checks, "unshift(f6) = f5", unshift.apply(fx.f[5]), fx.f[4]);

    return report;
}

SigmaReport verify_sigma(const AlphabetFixture& fx) {
    const RingPtr& ring = fx.ring;
    auto parse = [&](const char* text) { return parse_poly(text, ring); };

    SigmaReport report;
    auto& checks = report.checks;

    // (a) sigma∘sigma = 4xyz * identity, componentwise.
    PolyMap twice = compose(fx.sigma, fx.sigma);
    MultiPoly common = parse("4*x*y*z");
    const char* names[4] = {"x", "y", "z", "t"};
    for (std::size_t i = 0; i < 4; ++i) {
        push_check(checks, std::string("sigma(sigma(") + names[i] + ")) = 4xyz*" + names[i],
                   twice.images()[i], common * MultiPoly::variable(ring, i));
    }

    // (b) f∘sigma = 256 x^3 y^3 z^4 (x-z)(y-z)(xz-(y-t)^2)(yz-(x-t)^2).
    MultiPoly pullback = fx.sigma.apply(fx.f_product);
    MultiPoly quartet = parse("(x - z)*(y - z)*(x*z - (y - t)^2)*(y*z - (x - t)^2)");
    MultiPoly monomial = parse("x^3*y^3*z^4");
    push_check(checks, "f∘sigma = 256*x^3*y^3*z^4*(x-z)(y-z)(xz-(y-t)^2)(yz-(x-t)^2)",
               pullback, (monomial * quartet).scaled(Rat(256)));

    // (c) x^2 y^2 z^4 * (branch octic of X) = (f∘sigma) / 256, the
    // change-of-variable w' = x y z^2 w.
    MultiPoly octic = fx.branch[0];
    for (int i = 1; i < 6; ++i) octic = octic * fx.branch[i];
    auto scaled_down = divide_exact(pullback, MultiPoly::constant(ring, Rat(256)));
    push_check(checks, "x^2*y^2*z^4 * (X branch octic) = (f∘sigma)/256",
               parse("x^2*y^2*z^4") * octic, scaled_down ? *scaled_down : MultiPoly::zero(ring));

    return report;
}

std::vector<VarietyModel> build_models() {
    AlphabetFixture fx = build_fixture();

    MultiPoly octic = fx.branch[0];
    for (int i = 1; i < 6; ++i) octic = octic * fx.branch[i];

    RingPtr ring_q = Ring::make({"x1", "x2", "x3", "x4"});
    MultiPoly q_poly = parse_poly(
        "-x3^2*(x4^2 - x1*x2) + (x1 + x2)*(x1*x4^2 + x2*x4^2 - 4*x1*x2*x4 + x1^2*x2 + x1*x2^2)",
        ring_q);

    RingPtr ring_s = Ring::make({"y1", "y2", "y3"});
    MultiPoly s_branch = parse_poly("(y1^2 + y2^2 - 2*y3^2)*(y1^2*y2^2 - y3^4)", ring_s);

    MultiPoly fermat = parse_poly("x^4 + y^4 + z^4 + t^4", fx.ring);

    std::vector<VarietyModel> models;
    models.push_back(make_double_cover("X", fx.ring, octic, {2, 3}));
    models.push_back(make_double_cover("calX", fx.ring, fx.f_product, {2, 3}));
    models.push_back(make_hypersurface("Q", ring_q, q_poly, {2}));
    models.push_back(make_double_cover("S", ring_s, s_branch, {2}));
    models.push_back(make_hypersurface("fermat", fx.ring, fermat, {2}));
    return models;
}

VarietyModel builtin_model(const std::string& name) {
    for (auto& m : build_models())
        if (m.name == name) return m;
    throw Error("unknown builtin model '" + name + "' (expected X, calX, Q, S, or fermat)");
}

} // namespace unirat
