#include <doctest.h>

#include "unirat/alphabet.hpp"
#include "unirat/count.hpp"
#include "unirat/parser.hpp"

#include <random>
#include <set>

using namespace unirat;

namespace {

// Independent oracle: enumerate every nonzero coordinate tuple, keep the
// solutions, and count projective orbits by explicit equivalence testing
// under the weighted scaling action. Only viable for tiny primes.
unsigned long long brute_force_count(const VarietyModel& model, long p) {
    std::size_t n = model.base_ring->size();
    bool cover = model.kind == VarietyModel::Kind::DoubleCover;
    std::size_t total_vars = n + (cover ? 1 : 0);
    long w_weight = cover ? model.cover_weight : 0;

    std::set<std::vector<long>> orbit_reps;
    std::vector<long> tuple(total_vars, 0);

    auto power_mod = [&](long base, long e) {
        long acc = 1 % p;
        base %= p;
        for (long k = 0; k < e; ++k) acc = acc * base % p;
        return acc;
    };

    for (;;) {
        // advance odometer
        std::size_t i = 0;
        while (i < total_vars) {
            if (++tuple[i] < p) break;
            tuple[i] = 0;
            ++i;
        }
        if (i == total_vars) break;

        bool all_zero = true;
        for (long c : tuple) all_zero &= (c == 0);
        if (all_zero) continue;

        std::vector<long> base_pt(tuple.begin(), tuple.begin() + n);
        long value = model.poly.eval_mod(base_pt, p);
        if (cover) {
            long w = tuple[n];
            if (w * w % p != value) continue;
        } else {
            if (value != 0) continue;
        }

        // canonical orbit representative: lexicographically smallest image
        std::vector<long> best = tuple;
        for (long lambda = 1; lambda < p; ++lambda) {
            std::vector<long> image(total_vars);
            for (std::size_t k = 0; k < n; ++k) image[k] = tuple[k] * lambda % p;
            if (cover) image[n] = tuple[n] * power_mod(lambda, w_weight) % p;
            if (image < best) best = image;
        }
        orbit_reps.insert(best);
    }
    return orbit_reps.size();
}

} // namespace

TEST_CASE("ctx: square tables for small primes") {
    PrimeFieldCtx c7 = make_ctx(7);
    std::set<long> squares;
    for (long a = 0; a < 7; ++a)
        if (c7.flag(a) == PrimeFieldCtx::SquareFlag::Square) squares.insert(a);
    CHECK(squares == std::set<long>{1, 2, 4});
    CHECK(c7.flag(0) == PrimeFieldCtx::SquareFlag::Zero);

    PrimeFieldCtx c5 = make_ctx(5);
    std::set<long> squares5;
    for (long a = 0; a < 5; ++a)
        if (c5.flag(a) == PrimeFieldCtx::SquareFlag::Square) squares5.insert(a);
    CHECK(squares5 == std::set<long>{1, 4});

    CHECK_THROWS_AS(make_ctx(2), Error);
    CHECK_THROWS_AS(make_ctx(9), Error);
    CHECK_THROWS_AS(make_ctx(1), Error);
}

TEST_CASE("ctx: character multiplicativity") {
    PrimeFieldCtx ctx = make_ctx(13);
    auto chi = [&](long a) {
        return ctx.flag(a) == PrimeFieldCtx::SquareFlag::Square ? 1 : -1;
    };
    for (long a = 1; a < 13; ++a)
        for (long b = 1; b < 13; ++b) CHECK(chi(a * b % 13) == chi(a) * chi(b));
    long count_squares = 0;
    for (long a = 1; a < 13; ++a) count_squares += chi(a) == 1;
    CHECK(count_squares == 6); // (p-1)/2
}

TEST_CASE("count: X from the printed table at small primes") {
    VarietyModel X = builtin_model("X");
    CHECK(count_points(X, 3).count == 46);
    CHECK(count_points(X, 5).count == 180);
    CHECK(count_points(X, 7).count == 500);
}

TEST_CASE("count: a hyperplane in P^3 has #P^2 points") {
    RingPtr r = Ring::make({"x", "y", "z", "t"});
    VarietyModel plane = make_hypersurface("plane", r, parse_poly("x", r), {});
    CHECK(count_points(plane, 5).count == 31); // 1 + 5 + 25
    CHECK(count_points(plane, 7).count == 57);
}

TEST_CASE("count: double cover with branch x^8 splits by the x = 0 case") {
    RingPtr r = Ring::make({"x", "y", "z", "t"});
    VarietyModel m = make_double_cover("x8", r, parse_poly("x^8", r), {});
    PointCountRecord rec = count_points(m, 3);
    CHECK(rec.count == 67); // (1+3+9) + 2*27
    CHECK(rec.count == brute_force_count(m, 3));
}

TEST_CASE("count: fiber-sum identity on double covers") {
    for (const char* name : {"X", "calX", "S"}) {
        VarietyModel m = builtin_model(name);
        std::size_t n = m.base_ring->size() - 1; // P^n
        for (long p : {3, 5, 7, 11}) {
            PointCountRecord rec = count_points(m, p);
            unsigned long long proj = 0, power = 1;
            for (std::size_t k = 0; k <= n; ++k) {
                proj += power;
                power *= static_cast<unsigned long long>(p);
            }
            unsigned long long nonsquares = proj - rec.zeros - rec.squares;
            CHECK(rec.count == rec.zeros + 2 * rec.squares);
            CHECK(rec.zeros + rec.squares + nonsquares == proj);
        }
    }
}

TEST_CASE("count: Lefschetz sanity for the smooth quadric") {
    RingPtr r = Ring::make({"x", "y", "z", "w"});
    VarietyModel quadric = make_hypersurface("quadric", r, parse_poly("x*w - y*z", r), {});
    for (long p : {3, 5, 7, 11}) {
        unsigned long long expected = static_cast<unsigned long long>(p + 1) * (p + 1);
        CHECK(count_points(quadric, p).count == expected);
    }
}

TEST_CASE("count: brute-force equivalence for all builtins at p <= 7") {
    for (const auto& m : build_models()) {
        for (long p : {3, 5, 7}) {
            CAPTURE(m.name);
            CAPTURE(p);
            CHECK(count_points(m, p).count == brute_force_count(m, p));
        }
    }
}

TEST_CASE("property: brute-force equivalence on random small models") {
    std::mt19937_64 rng(0x5eedc043);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> nterms(1, 5);
    std::uniform_int_distribution<int> pick_p(0, 2);
    std::uniform_int_distribution<int> pick_deg(1, 4);
    const long primes[3] = {3, 5, 7};

    RingPtr r3 = Ring::make({"x", "y", "z"});
    int tested = 0;
    for (int iter = 0; tested < 1000; ++iter) {
        REQUIRE(iter < 4000); // generator must not stall
        unsigned degree = static_cast<unsigned>(pick_deg(rng)) * 2; // even, 2..8
        std::vector<Term> terms;
        int n = nterms(rng);
        for (int k = 0; k < n; ++k) {
            // random exponent triple of total degree `degree`
            unsigned e0 = static_cast<unsigned>(rng() % (degree + 1));
            unsigned e1 = static_cast<unsigned>(rng() % (degree - e0 + 1));
            terms.push_back(Term{{e0, e1, degree - e0 - e1}, Rat(coeff(rng))});
        }
        MultiPoly poly = MultiPoly::from_terms(r3, std::move(terms));
        if (poly.is_zero()) continue;

        long p = primes[pick_p(rng)];
        bool cover = (rng() & 1) != 0;
        VarietyModel m = cover ? make_double_cover("rand", r3, poly, {})
                               : make_hypersurface("rand", r3, poly, {});
        CAPTURE(to_string(poly));
        CAPTURE(p);
        CAPTURE(cover);
        CHECK(count_points(m, p).count == brute_force_count(m, p));
        ++tested;
    }
}

TEST_CASE("count: normalization side does not matter") {
    // Counting with the last nonzero coordinate normalized is the same as
    // counting the model with its variables reversed.
    for (const char* name : {"X", "Q", "S"}) {
        VarietyModel m = builtin_model(name);
        std::vector<std::string> rev_names(m.base_ring->vars().rbegin(),
                                           m.base_ring->vars().rend());
        RingPtr rev_ring = Ring::make(rev_names);
        std::vector<Term> terms = m.poly.terms();
        for (auto& t : terms) std::reverse(t.exps.begin(), t.exps.end());
        MultiPoly rev_poly = MultiPoly::from_terms(rev_ring, std::move(terms));
        VarietyModel rev = m.kind == VarietyModel::Kind::DoubleCover
                               ? make_double_cover(m.name, rev_ring, rev_poly, m.bad_primes)
                               : make_hypersurface(m.name, rev_ring, rev_poly, m.bad_primes);
        for (long p : {3, 5, 7, 11, 13}) {
            CAPTURE(name);
            CHECK(count_points(m, p).count == count_points(rev, p).count);
        }
    }
}

TEST_CASE("count_range: tagging and determinism") {
    VarietyModel X = builtin_model("X");
    auto records = count_range(X, 100, 4);
    REQUIRE(records.size() == 24);
    CHECK(records.front().p == 3);
    CHECK_FALSE(records.front().good); // bad reduction at 3
    int good = 0;
    for (const auto& r : records) good += r.good;
    CHECK(good == 23);

    auto serial = count_range(X, 20, 1);
    auto parallel = count_range(X, 20, 3);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].p == parallel[i].p);
        CHECK(serial[i].count == parallel[i].count);
    }

    CHECK(count_range(X, 3, 1).size() == 1);
    CHECK(count_range(X, 2, 1).empty());

    auto s_records = count_range(builtin_model("S"), 100, 4);
    CHECK(s_records.size() == 24);
    int s_good = 0;
    for (const auto& r : s_records) s_good += r.good;
    CHECK(s_good == 24);
}

TEST_CASE("residues: weight conventions") {
    PointCountRecord rec;
    rec.p = 5;
    rec.count = 180;
    CHECK(residue_of(rec, Convention::Weight4) == 1);  // 1 - 180 mod 5
    CHECK(residue_of(rec, Convention::Weight3) == 4);  // 180 - 1 mod 5

    rec.p = 7;
    rec.count = 500;
    CHECK(residue_of(rec, Convention::Weight4) == 5);

    rec.p = 11;
    rec.count = 1;  // count = 1 mod p gives residue 0 both ways
    CHECK(residue_of(rec, Convention::Weight4) == 0);
    CHECK(residue_of(rec, Convention::Weight3) == 0);

    VarietyModel X = builtin_model("X");
    auto records = count_range(X, 10, 1);
    auto residues = residue_report(records, Convention::Weight4);
    REQUIRE(residues.size() == 3);
    CHECK(residues[0] == std::pair<long, long>{3, 0});
    CHECK(residues[1] == std::pair<long, long>{5, 1});
    CHECK(residues[2] == std::pair<long, long>{7, 5});
}

TEST_CASE("count: renderings") {
    VarietyModel X = builtin_model("X");
    auto records = count_range(X, 10, 1);
    std::string csv = records_to_csv(records);
    CHECK(csv.find("p,count,residue_weight4,good_reduction") == 0);
    CHECK(csv.find("5,180,1,true") != std::string::npos);
    std::string md = records_to_markdown(records);
    CHECK(md.find("| count |") != std::string::npos);
    std::string json = records_to_json(records);
    CHECK(json.find("\"count\": 180") != std::string::npos);
}

TEST_CASE("count: rejects bad inputs") {
    VarietyModel X = builtin_model("X");
    CHECK_THROWS_AS(count_points(X, 2), Error);
    CHECK_THROWS_AS(count_points(X, 15), Error);

    // Denominator divisible by p.
    RingPtr r = Ring::make({"x", "y"});
    VarietyModel frac = make_hypersurface("frac", r, parse_poly("1/3*x^2 + y^2", r), {});
    CHECK_THROWS_AS(count_points(frac, 3), Error);
    CHECK(count_points(frac, 5).count == brute_force_count(frac, 5));
    CHECK(count_points(frac, 7).count == brute_force_count(frac, 7));
}
