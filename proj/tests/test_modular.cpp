#include <doctest.h>

#include "unirat/alphabet.hpp"
#include "unirat/modular.hpp"
#include "unirat/parser.hpp"

#include <cstdio>
#include <fstream>
#include <random>

using namespace unirat;

namespace {

// Naive truncated product prod_{n<=N} (1 - q^n), the oracle for the
// pentagonal expansion.
QSeries naive_euler(long N) {
    QSeries acc = QSeries::one(N);
    for (long n = 1; n <= N; ++n) {
        QSeries factor = QSeries::one(N);
        factor.set_coeff(n, Int(-1));
        acc = acc * factor;
    }
    return acc;
}

QSeries random_series(std::mt19937_64& rng, long N) {
    std::uniform_int_distribution<long> coeff(-5, 5);
    QSeries s(N);
    for (long k = 0; k <= N; ++k) s.set_coeff(k, Int(coeff(rng)));
    return s;
}

std::vector<PointCountRecord> x_records_100() {
    static std::vector<PointCountRecord> records =
        count_range(builtin_model("X"), 100, 0);
    return records;
}

} // namespace

TEST_CASE("euler_product: pentagonal numbers up to q^12") {
    QSeries e = euler_product(12);
    CHECK(e.coeff(0) == 1);
    CHECK(e.coeff(1) == -1);
    CHECK(e.coeff(2) == -1);
    CHECK(e.coeff(3) == 0);
    CHECK(e.coeff(4) == 0);
    CHECK(e.coeff(5) == 1);
    CHECK(e.coeff(7) == 1);
    CHECK(e.coeff(12) == -1);
    for (long k : {6, 8, 9, 10, 11}) CHECK(e.coeff(k) == 0);

    QSeries tiny = euler_product(1);
    CHECK(tiny.coeff(0) == 1);
    CHECK(tiny.coeff(1) == -1);
}

TEST_CASE("property: euler_product equals the naive product for N <= 50") {
    for (long N = 1; N <= 50; ++N) {
        QSeries fast = euler_product(N);
        QSeries slow = naive_euler(N);
        for (long k = 0; k <= N; ++k) {
            CAPTURE(N);
            CAPTURE(k);
            CHECK(fast.coeff(k) == slow.coeff(k));
        }
    }
}

TEST_CASE("property: QSeries ring laws on random truncated series") {
    std::mt19937_64 rng(0x5eed9001);
    for (int i = 0; i < 1000; ++i) {
        QSeries a = random_series(rng, 12);
        QSeries b = random_series(rng, 12);
        QSeries c = random_series(rng, 12);
        QSeries lhs = (a * b) * c;
        QSeries rhs = a * (b * c);
        for (long k = 0; k <= 12; ++k) CHECK(lhs.coeff(k) == rhs.coeff(k));
        QSeries unit = a * QSeries::one(12);
        for (long k = 0; k <= 12; ++k) CHECK(unit.coeff(k) == a.coeff(k));
    }
}

TEST_CASE("property: series inversion is a true inverse up to truncation") {
    std::mt19937_64 rng(0x5eed9002);
    for (int i = 0; i < 200; ++i) {
        QSeries s = random_series(rng, 16);
        s.set_coeff(0, Int(1));
        QSeries product = s * s.inverse();
        CHECK(product.coeff(0) == 1);
        for (long k = 1; k <= 16; ++k) CHECK(product.coeff(k) == 0);
    }
    QSeries bad(4);
    bad.set_coeff(0, Int(2));
    CHECK_THROWS_AS(bad.inverse(), Error); // constant term must be 1
}

TEST_CASE("eta_quotient: the weight-4 level-6 expansion") {
    QSeries f = eta_quotient(EtaQuotientSpec{{{1, 2}, {2, 2}, {3, 2}, {6, 2}}}, 11);
    long expected[] = {1, -2, -3, 4, 6, 6, -16, -8, 9, -12, 12};
    for (long k = 1; k <= 11; ++k) CHECK(f.coeff(k) == expected[k - 1]);
}

TEST_CASE("eta_quotient: the weight-3 level-16 expansion through q^37") {
    QSeries f = eta_quotient(EtaQuotientSpec{{{4, 6}}}, 37);
    CHECK(f.coeff(1) == 1);
    CHECK(f.coeff(5) == -6);
    CHECK(f.coeff(9) == 9);
    CHECK(f.coeff(13) == 10);
    CHECK(f.coeff(17) == -30);
    CHECK(f.coeff(25) == 11);
    CHECK(f.coeff(29) == 42);
    CHECK(f.coeff(37) == -70);
    for (long k = 1; k <= 37; ++k)
        if (k % 4 != 1) CHECK(f.coeff(k) == 0);
    CHECK(f.coeff(21) == 0);
    CHECK(f.coeff(33) == 0);
}

TEST_CASE("eta_quotient: the weight-3 level-8 expansion through q^12") {
    QSeries g = eta_quotient(EtaQuotientSpec{{{1, 2}, {2, 1}, {4, 1}, {8, 2}}}, 12);
    long expected[] = {1, -2, -2, 4, 0, 4, 0, -8, -5, 0, 14, -8};
    for (long k = 1; k <= 12; ++k) CHECK(g.coeff(k) == expected[k - 1]);
}

TEST_CASE("eta_quotient: negative exponents and the integrality gate") {
    // eta(tau)^-24 * eta(2tau)^48 has prefactor (−24 + 96)/24 = 3.
    QSeries s = eta_quotient(EtaQuotientSpec{{{1, -24}, {2, 48}}}, 6);
    CHECK(s.coeff(0) == 0);
    CHECK(s.coeff(3) == 1); // leading term q^3

    CHECK_THROWS_AS(eta_quotient(EtaQuotientSpec{{{1, 1}}}, 5), Error);  // 1/24
    CHECK_THROWS_AS(eta_quotient(EtaQuotientSpec{{{1, -24}}}, 5), Error); // negative
}

TEST_CASE("eta spec parsing") {
    EtaQuotientSpec spec = EtaQuotientSpec::parse("1:2,2:2,3:2,6:2");
    REQUIRE(spec.factors.size() == 4);
    CHECK(spec.factors[0] == std::pair<long, long>{1, 2});
    CHECK(spec.factors[3] == std::pair<long, long>{6, 2});
    CHECK(spec.to_string() == "1:2,2:2,3:2,6:2");
    CHECK_THROWS_AS(EtaQuotientSpec::parse("1-2"), Error);
    CHECK_THROWS_AS(EtaQuotientSpec::parse(""), Error);
    CHECK_THROWS_AS(EtaQuotientSpec::parse("0:2"), Error);
}

TEST_CASE("newform: anchors gate the builtin fixtures") {
    Newform nf6k4{builtin_newform("nf6k4")};
    CHECK(nf6k4.coeff(5) == 6);
    CHECK(nf6k4.coeff(7) == -16);
    CHECK(nf6k4.coeff(11) == 12);
    CHECK(nf6k4.coeff(2) == -2);

    Newform nf16k3{builtin_newform("nf16k3")};
    CHECK(nf16k3.coeff(3) == 0);
    CHECK(nf16k3.coeff(5) == -6);

    std::vector<long> primes{2, 3, 5, 7, 11};
    auto coeffs = nf6k4.prime_coeffs(primes);
    CHECK(coeffs.at(2) == -2);
    CHECK(coeffs.at(11) == 12);

    // Truncation extension: far beyond the anchor.
    CHECK_NOTHROW(nf6k4.coeff(1500));

    // A corrupted anchor is a hard error.
    NewformSpec broken = builtin_newform("nf6k4");
    broken.anchor[4] = 7; // b_5 is really 6
    CHECK_THROWS_AS(Newform{broken}, Error);
}

TEST_CASE("newform: coefficient file source") {
    std::string path = "test_nf_coeffs.txt";
    {
        std::ofstream out(path);
        out << "# sample prefix\n";
        out << "1 1\n2 -2\n3 -3\n4 4\n5 6\n6 6\n7 -16\n";
    }
    NewformSpec spec;
    spec.name = "file-form";
    spec.weight = 4;
    spec.level = 6;
    spec.group = "Gamma0";
    spec.source = path;
    spec.anchor = {Int(1), Int(-2), Int(-3), Int(4), Int(6)};
    Newform form{spec};
    CHECK(form.coeff(7) == -16);
    CHECK_THROWS_AS(form.coeff(8), Error); // file truncated

    std::remove(path.c_str());
    CHECK_THROWS_AS(read_coefficient_file("does_not_exist.txt"), Error);
}

TEST_CASE("esnault_guess: X is flagged, a hyperplane is not") {
    Verdict v = esnault_guess(x_records_100());
    CHECK(v.kind == VerdictKind::NotUnirationalGuess);
    CHECK(v.sigma.size() == 23);  // p = 3 is bad
    CHECK(v.sigma0.size() == 23); // every good prime has count != 1 mod p
    CHECK(v.threshold_met);
    CHECK(!v.caveat.empty());

    RingPtr r = Ring::make({"x", "y", "z", "t"});
    VarietyModel plane = make_hypersurface("plane", r, parse_poly("x", r), {});
    Verdict vp = esnault_guess(count_range(plane, 50, 0));
    CHECK(vp.kind == VerdictKind::Inconclusive);
    CHECK(vp.sigma0.empty());
}

TEST_CASE("esnault_guess: Fermat quartic at primes 3 mod 4 is inconclusive") {
    auto records = count_range(builtin_model("fermat"), 100, 0);
    std::vector<PointCountRecord> filtered;
    for (const auto& r : records)
        if (r.p % 4 == 3) filtered.push_back(r);
    REQUIRE(!filtered.empty());
    Verdict v = esnault_guess(filtered);
    CHECK(v.kind == VerdictKind::Inconclusive);

    // Monotonicity: adding the remaining primes can only extend sigma0.
    Verdict full = esnault_guess(records);
    CHECK(full.kind == VerdictKind::NotUnirationalGuess);
    CHECK(full.sigma0.size() >= v.sigma0.size());
}

TEST_CASE("esnault_guess: S on the primes 5,7 mod 8 looks unirational") {
    auto records = count_range(builtin_model("S"), 100, 0);
    std::vector<PointCountRecord> misleading;
    for (const auto& r : records)
        if (r.p % 8 == 5 || r.p % 8 == 7) misleading.push_back(r);
    REQUIRE(!misleading.empty());
    Verdict v = esnault_guess(misleading);
    CHECK(v.kind == VerdictKind::Inconclusive); // all residues vanish on this subset
    CHECK(v.sigma0.empty());

    Verdict full = esnault_guess(records);
    CHECK(full.kind == VerdictKind::NotUnirationalGuess);
}

TEST_CASE("congruence_match: X against nf6k4 under weight4") {
    Newform form{builtin_newform("nf6k4")};
    Verdict v = congruence_match(x_records_100(), form, Convention::Weight4);
    CHECK(v.kind == VerdictKind::CongruencePass);
    CHECK(v.threshold_met);
    for (const auto& d : v.details) CHECK(d.ok);

    // The same records fail against the wrong form and convention.
    Newform wrong{builtin_newform("nf16k3")};
    Verdict vw = congruence_match(x_records_100(), wrong, Convention::Weight3);
    CHECK(vw.kind == VerdictKind::CongruenceFail);
}

TEST_CASE("exact_cy3_fit: recovers (-8, 4) and rejects p = 3") {
    Newform form{builtin_newform("nf6k4")};
    auto fit = exact_cy3_fit(x_records_100(), form);
    auto* ok = std::get_if<Cy3Fit>(&fit);
    REQUIRE(ok != nullptr);
    CHECK(ok->c1 == -8);
    CHECK(ok->c2 == 4);
    CHECK(ok->verified.size() == 23);

    // Spot check from the printed numbers: 6 = 1 - 40 + 100 + 125 - 180.
    CHECK(form.coeff(5) == 1 - 8 * 5 + 4 * 25 + 125 - 180);

    // Treating p = 3 as good breaks the fit exactly there.
    std::vector<PointCountRecord> with3 = x_records_100();
    with3.front().good = true;
    auto fit3 = exact_cy3_fit(with3, form);
    auto* bad = std::get_if<Cy3FitFailure>(&fit3);
    REQUIRE(bad != nullptr);
    CHECK(bad->inconsistent_prime == 3);

    auto records = x_records_100();
    std::vector<PointCountRecord> few(records.begin(), records.begin() + 3);
    CHECK_THROWS_AS(exact_cy3_fit(few, form), Error); // only 2 good primes among {3,5,7}
}

TEST_CASE("weil_bound_check: nf6k4 within 2 p^{3/2} below 100") {
    Newform form{builtin_newform("nf6k4")};
    std::vector<long> primes;
    for (const auto& r : x_records_100()) primes.push_back(r.p);
    CHECK(weil_bound_check(form, 2, 3, primes).empty());

    // p = 7: 256 <= 4 * 343.
    std::vector<long> seven{7};
    CHECK(weil_bound_check(form, 2, 3, seven).empty());

    // h = 0 flags exactly the primes with a nonzero coefficient.
    auto violations = weil_bound_check(form, 0, 3, primes);
    std::size_t nonzero = 0;
    for (long p : primes) nonzero += form.coeff(p) != 0;
    CHECK(violations.size() == nonzero);
    CHECK(nonzero > 0);
}

TEST_CASE("verdict JSON carries the caveat and evidence sets") {
    Verdict v = esnault_guess(x_records_100());
    std::string json = verdict_to_json(v);
    CHECK(json.find("not_unirational_guess") != std::string::npos);
    CHECK(json.find("heuristic") != std::string::npos);
    CHECK(json.find("\"sigma0\"") != std::string::npos);
}

TEST_CASE("coefficient lines round trip") {
    QSeries f = eta_quotient(EtaQuotientSpec{{{1, 2}, {2, 2}, {3, 2}, {6, 2}}}, 11);
    std::string text = write_coefficient_lines(f);
    CHECK(text.find("1 1\n") == 0);
    CHECK(text.find("7 -16\n") != std::string::npos);

    std::string path = "test_roundtrip_coeffs.txt";
    {
        std::ofstream out(path);
        out << text;
    }
    auto coeffs = read_coefficient_file(path);
    std::remove(path.c_str());
    REQUIRE(coeffs.size() == 12);
    for (long k = 1; k <= 11; ++k) CHECK(coeffs[static_cast<std::size_t>(k)] == f.coeff(k));
}
