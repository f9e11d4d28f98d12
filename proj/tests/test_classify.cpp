#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "toral/classify.hpp"
#include "toral/models.hpp"

using namespace toral;

namespace {

TorusActionS3 action(std::vector<std::array<long, 4>> rows)
{
    std::vector<ExponentRow> out;
    for (const auto& r : rows)
        out.push_back({r[0], r[1], r[2], r[3]});
    return TorusActionS3(std::move(out));
}

std::vector<oracle::Row> to_oracle(const TorusActionS3& act)
{
    std::vector<oracle::Row> out;
    for (const auto& r : act.rows())
        out.push_back({r.a.get_si(), r.b.get_si(), r.k.get_si(), r.l.get_si()});
    return out;
}

TorusActionS3 random_action(std::uint64_t& s, std::size_t n, long bound)
{
    std::vector<std::array<long, 4>> rows(n);
    for (auto& r : rows)
        for (auto& e : r)
            e = static_cast<long>(oracle::lcg(s) % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
    return action(rows);
}

std::vector<TorusActionS3> random_free_actions(std::uint64_t seed, std::size_t count, long bound)
{
    std::vector<TorusActionS3> out;
    std::uint64_t s = seed;
    while (out.size() < count) {
        auto act = random_action(s, 3 + oracle::lcg(s) % 2, bound);
        if (is_effective(act) && is_free(act))
            out.push_back(std::move(act));
    }
    return out;
}

const TorusActionS3 kUnitTangent = action({{1, 1, 0, 0}, {0, 0, 1, 1}, {2, 0, 0, 2}});
const TorusActionS3 kHopfPair = action({{1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 0}});
const TorusActionS3 kConnSum = action({{1, 0, 0, 1}, {1, 1, 1, -1}, {0, 0, 0, 0}});

} // namespace

// ----------------------------------------------------------- rank bounds

TEST(RankBounds, Examples)
{
    EXPECT_EQ(max_effective_rank(6), 4);
    EXPECT_EQ(max_almost_free_rank(6).rank, 2);
    EXPECT_TRUE(max_almost_free_rank(6).attainable);
    EXPECT_EQ(max_effective_rank(7), 4);
    EXPECT_EQ(max_almost_free_rank(7).rank, 2);
    EXPECT_FALSE(max_almost_free_rank(7).attainable);
    EXPECT_EQ(max_effective_rank(3), 2);
    EXPECT_EQ(max_almost_free_rank(3).rank, 1);
    EXPECT_TRUE(max_almost_free_rank(3).attainable);
    EXPECT_THROW(max_effective_rank(0), PreconditionError);
}

TEST(RankBounds, SliceInvariantsExamples)
{
    auto check = [](int n, int k, int s, int af) {
        const auto si = slice_invariants(n);
        EXPECT_EQ(si.k, k) << n;
        EXPECT_EQ(si.s, s) << n;
        EXPECT_EQ(si.almost_free_subrank, af) << n;
    };
    check(9, 6, 3, 3);
    check(10, 6, 4, 2);
    check(8, 5, 3, 2);
    EXPECT_THROW(slice_invariants(2), PreconditionError);
}

TEST(RankBounds, MatchBruteForce)
{
    for (int n = 1; n <= 100; ++n) {
        int k = 0;
        while (3 * (k + 1) <= 2 * n)
            ++k;
        int r = 0;
        while (3 * (r + 1) <= n)
            ++r;
        EXPECT_EQ(max_effective_rank(n), k);
        EXPECT_EQ(max_almost_free_rank(n).rank, r);
        EXPECT_EQ(max_almost_free_rank(n).attainable, n % 3 != 1);
        if (n >= 3) {
            const auto si = slice_invariants(n);
            EXPECT_EQ(si.s, n - k);
            EXPECT_EQ(si.almost_free_subrank, 2 * k - n);
        }
    }
}

// ------------------------------------------------------------- profiles

TEST(Profiles, AlmostFreeExamples)
{
    EXPECT_EQ(enumerate_profiles(9, 3, ProfileMode::almost_free),
              (std::vector<HomotopyProfile>{make_profile(9, {{3, 3}})}));
    auto eight = enumerate_profiles(8, 2, ProfileMode::almost_free);
    std::vector<HomotopyProfile> want{make_profile(8, {{3, 1}, {5, 1}}), make_profile(8, {{2, 1}, {3, 3}})};
    std::sort(want.begin(), want.end());
    EXPECT_EQ(eight, want);
    EXPECT_TRUE(enumerate_profiles(7, 2, ProfileMode::almost_free).empty());
    EXPECT_THROW(enumerate_profiles(2, 1, ProfileMode::almost_free), PreconditionError);
    EXPECT_THROW(enumerate_profiles(5, 0, ProfileMode::almost_free), PreconditionError);
}

TEST(Profiles, MaxRankEmptyExactlyWhenOneModThree)
{
    for (int n = 3; n <= 30; ++n) {
        const auto ps = enumerate_profiles(n, n / 3, ProfileMode::almost_free);
        EXPECT_EQ(ps.empty(), n % 3 == 1) << n;
        for (const auto& p : ps)
            EXPECT_TRUE(check_elliptic_constraints(p, n / 3).all()) << to_string(p);
    }
}

TEST(Profiles, SliceMaximalTableAtTen)
{
    const auto got = enumerate_profiles(10, 6, ProfileMode::effective_max);
    std::vector<HomotopyProfile> want{
        make_profile(10, {{3, 2}, {4, 1}, {7, 1}}), make_profile(10, {{3, 1}, {7, 1}}), make_profile(10, {{5, 2}}),
        make_profile(10, {{2, 1}, {3, 2}, {5, 1}}), make_profile(10, {{2, 2}, {3, 4}})};
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want);

    // d4 = 1 without d7 satisfies the numeric constraints but is not a product of spheres
    const auto excluded = make_profile(10, {{3, 1}, {4, 1}, {5, 2}});
    const auto numeric = enumerate_profiles(10, 2, ProfileMode::almost_free);
    EXPECT_NE(std::find(numeric.begin(), numeric.end(), excluded), numeric.end());
    EXPECT_EQ(std::find(got.begin(), got.end(), excluded), got.end());
    EXPECT_TRUE(profile_to_models(excluded).empty());
    EXPECT_EQ(numeric.size(), 6U);
}

TEST(Profiles, EffectiveMaxOutputsAreRealizable)
{
    for (int n = 3; n <= 16; ++n)
        for (const auto& p : enumerate_profiles(n, 2 * n / 3, ProfileMode::effective_max)) {
            const auto models = profile_to_models(p);
            ASSERT_EQ(models.size(), 1U) << to_string(p);
            EXPECT_EQ(models[0].profile(), p);
            EXPECT_TRUE(check_elliptic_constraints(p, std::max(0, 2 * (2 * n / 3) - n)).all());
        }
}

TEST(Profiles, ProfileToModelsExamples)
{
    EXPECT_EQ(profile_to_models(make_profile(6, {{3, 2}})),
              (std::vector<SphereFactorization>{{{3, 3}, 0}}));
    EXPECT_EQ(profile_to_models(make_profile(5, {{2, 1}, {3, 2}})),
              (std::vector<SphereFactorization>{{{3, 3}, 1}}));
    EXPECT_EQ(profile_to_models(make_profile(4, {{4, 1}, {7, 1}})),
              (std::vector<SphereFactorization>{{{4}, 0}}));
    EXPECT_EQ(profile_to_models(make_profile(4, {{2, 1}, {5, 1}})),
              (std::vector<SphereFactorization>{{{5}, 1}}));
    EXPECT_THROW(profile_to_models(make_profile(4, {{3, 1}})), PreconditionError);
}

TEST(Profiles, SphereFactorizationRoundTrip)
{
    // every product of spheres of dimension 3..8 with up to 3 factors and l <= 2
    for (int a = 3; a <= 8; ++a)
        for (int b = a; b <= 8; ++b)
            for (int c = b; c <= 8; ++c)
                for (int l = 0; l <= 2; ++l) {
                    SphereFactorization f{{a, b, c}, l};
                    const auto p = f.profile();
                    if (!check_elliptic_constraints(p, 0).all())
                        continue;
                    EXPECT_EQ(profile_to_models(p), std::vector<SphereFactorization>{f}) << f.to_string();
                }
}

// ------------------------------------------------------ T^2 quotients

TEST(ClassifyT2, Examples)
{
    const auto t1 = classify_t2_quotient(kUnitTangent);
    EXPECT_EQ(t1.kind, Kind::T1_S2xS2_PRODUCT);
    EXPECT_EQ(t1.rank_d3, 3U);
    EXPECT_EQ(t1.trailing_s3, 0U);
    EXPECT_FALSE(t1.epsilon.has_value());

    const auto hopf = classify_t2_quotient(kHopfPair);
    EXPECT_EQ(hopf.kind, Kind::S2xS2_PRODUCT);
    EXPECT_EQ(hopf.rank_d3, 2U);
    EXPECT_EQ(hopf.trailing_s3, 1U);
    ASSERT_TRUE(hopf.quotient_form.has_value());
    EXPECT_TRUE(is_rational_square(hopf.quotient_form->discriminant()));
    EXPECT_EQ(hopf.quotient_form->discriminant() / (hopf.quotient_form->B * hopf.quotient_form->B), Rational(1));

    const auto cs = classify_t2_quotient(kConnSum);
    EXPECT_EQ(cs.kind, Kind::CP2_CONNSUM_PRODUCT);
    EXPECT_EQ(cs.trailing_s3, 1U);
    ASSERT_TRUE(cs.epsilon.has_value());
    EXPECT_EQ(*cs.epsilon, -1);
    EXPECT_EQ(isotropy_class(*cs.quotient_form), IsotropyClass::anisotropic_minus_one);
}

TEST(ClassifyT2, Preconditions)
{
    EXPECT_THROW(classify_t2_quotient(action({{1, 0, 0, 1}})), PreconditionError);
    EXPECT_EQ(classify_t2_quotient(action({{1, 1, 0, 0}, {0, 0, 1, 1}})).kind, Kind::S2xS2_PRODUCT);
    EXPECT_THROW(classify_t2_quotient(action({{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 2, 2}})), PreconditionError);
    EXPECT_EQ(classify_t2_quotient(action({{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 1, 0, 0}})).kind, Kind::S2xS2_PRODUCT);
    EXPECT_THROW(classify_t2_quotient(action({{2, 1, 0, 0}, {0, 0, 2, 1}, {1, 1, 0, 0}})), FreenessViolation);
}

TEST(ClassifyT2, AgreesWithSquareSearchOracle)
{
    std::set<Kind> seen;
    for (const auto& act : random_free_actions(555, 600, 2)) {
        const auto r = classify_t2_quotient(act);
        const auto rows = to_oracle(act);
        const std::size_t rank = oracle::span_rank(rows);
        Kind expected;
        if (rank == 3)
            expected = Kind::T1_S2xS2_PRODUCT;
        else if (oracle::span_contains_square(rows))
            expected = Kind::S2xS2_PRODUCT;
        else
            expected = Kind::CP2_CONNSUM_PRODUCT;
        EXPECT_EQ(r.kind, expected) << act.to_string();
        EXPECT_EQ(r.rank_d3, rank);
        EXPECT_EQ(r.trailing_s3, act.factors() - rank);
        seen.insert(r.kind);
    }
    EXPECT_EQ(seen.size(), 3U);
}

TEST(ClassifyT2, InvariantUnderPermutationAndReparametrization)
{
    std::uint64_t s = 91;
    for (const auto& act : random_free_actions(9191, 300, 2)) {
        const Kind k = classify_t2_quotient(act).kind;
        auto rows = act.rows();
        std::reverse(rows.begin(), rows.end());
        EXPECT_EQ(classify_t2_quotient(TorusActionS3(rows)).kind, k);

        IntMatrix u = IntMatrix::identity(2);
        const long t = static_cast<long>(oracle::lcg(s) % 5) - 2;
        const long v = static_cast<long>(oracle::lcg(s) % 5) - 2;
        u = IntMatrix(2, 2, {1 + t * v, t, v, 1});
        if (oracle::lcg(s) % 2)
            u = IntMatrix(2, 2, {u(0, 0), u(0, 1), -u(1, 0), -u(1, 1)});
        EXPECT_EQ(classify_t2_quotient(reparametrize(act, u)).kind, k) << act.to_string();
    }
}

TEST(ClassifyT2, EpsilonMatchesKind)
{
    int checked = 0;
    for (const auto& act : random_free_actions(4321, 1500, 1)) {
        const auto r = classify_t2_quotient(act);
        EXPECT_EQ(r.kind == Kind::T1_S2xS2_PRODUCT, r.rank_d3 == 3);
        if (!r.epsilon)
            continue;
        ++checked;
        EXPECT_EQ(*r.epsilon == 1, r.kind == Kind::S2xS2_PRODUCT);
        EXPECT_EQ(*r.epsilon == -1, r.kind == Kind::CP2_CONNSUM_PRODUCT);
    }
    EXPECT_GT(checked, 20);
}

TEST(Epsilon, Examples)
{
    const auto n = NormalizedActionS3::from_normal_form(kConnSum);
    EXPECT_EQ(epsilon_invariant(n), -1);
    // rank 3
    EXPECT_THROW(epsilon_invariant(NormalizedActionS3::from_normal_form(kUnitTangent)), PreconditionError);
    // l1 = 0
    EXPECT_THROW(epsilon_invariant(NormalizedActionS3::from_normal_form(kHopfPair)), PreconditionError);
    // rescaling by gcd(b1, l1): rows (1,2,0,2),(1,1,1,-1) give the same sign
    EXPECT_EQ(epsilon_invariant(NormalizedActionS3::from_normal_form(action({{1, 0, 0, 2}, {1, 1, 1, -1}, {0, 0, 0, 0}}))),
              -1);
}

TEST(Epsilon, RelationMatrix)
{
    const auto m = relation_matrix(NormalizedActionS3::from_normal_form(kUnitTangent));
    EXPECT_EQ(m, IntMatrix(3, 3, {1, 0, 0, 0, 0, 4, 0, 1, 0}));
    EXPECT_EQ(rank_rational(m), 3U);
    const auto c = relation_matrix(NormalizedActionS3::from_normal_form(kConnSum));
    EXPECT_EQ(c, IntMatrix(3, 3, {0, 1, 0, 1, 0, 0, 0, -1, 0}));
    EXPECT_EQ(rank_rational(c), 2U);
}

TEST(SquarePair, Examples)
{
    const Rational z(0), o(1);
    const auto id = square_pair_substitution({o, z, z}, {z, z, o});
    EXPECT_EQ(id.shape, 1);
    EXPECT_EQ(id.s_tilde, RatMatrix::identity(2));
    EXPECT_EQ(id.x_tilde, RatMatrix::identity(2));

    const auto c1 = square_pair_substitution({Rational(2), z, z}, {z, Rational(3), o});
    const Rational h(Integer(3), Integer(2)), e(Integer(9), Integer(8));
    EXPECT_EQ(c1.s_tilde, RatMatrix(2, 2, {h, z, h, o}));
    EXPECT_EQ(c1.x_tilde, RatMatrix(2, 2, {e, z, e, o}));

    const auto c2 = square_pair_substitution({z, o, z}, {o, z, o});
    EXPECT_EQ(c2.shape, 2);
    EXPECT_EQ(c2.s_tilde, RatMatrix(2, 2, {o, Rational(-1), o, o}));
    EXPECT_EQ(c2.x_tilde, RatMatrix(2, 2, {Rational(-2), o, Rational(2), o}));

    EXPECT_THROW(square_pair_substitution({z, o, z}, {o, z, Rational(-1)}), PreconditionError);
    EXPECT_THROW(square_pair_substitution({o, z, z}, {o, z, o}), PreconditionError);
}

TEST(SquarePair, RandomCaseOneReexpands)
{
    std::uint64_t s = 3;
    for (int t = 0; t < 300; ++t) {
        auto pick = [&](bool nonzero) {
            long v = 0;
            do
                v = static_cast<long>(oracle::lcg(s) % 21) - 10;
            while (nonzero && v == 0);
            return Rational(Integer(v), Integer(static_cast<long>(1 + oracle::lcg(s) % 5)));
        };
        const Rational a = pick(true), b = pick(false), g = pick(true);
        const auto w = square_pair_substitution({a, 0, 0}, {0, b, g});
        for (int i = 0; i < 2; ++i) {
            auto img = w.x_tilde(i, 0) * BinaryQuadraticForm{a, 0, 0};
            img += w.x_tilde(i, 1) * BinaryQuadraticForm{0, b, g};
            EXPECT_EQ(img, BinaryQuadraticForm::square({w.s_tilde(i, 0), w.s_tilde(i, 1)}));
        }
        const Rational det = w.s_tilde(0, 0) * w.s_tilde(1, 1) - w.s_tilde(0, 1) * w.s_tilde(1, 0);
        EXPECT_FALSE(det.is_zero());
    }
}

// ------------------------------------------------- circle quotients

TEST(CircleQuotient, Examples)
{
    const std::vector<Integer> zeros{0, 0}, mixed{1, 0}, none{0};
    EXPECT_EQ(classify_s1_quotient(zeros, 1), Kind::CP2_PRODUCT);
    EXPECT_EQ(classify_s1_quotient(mixed, 7), Kind::S2xS5_PRODUCT);
    EXPECT_THROW(classify_s1_quotient(none, 0), FreenessViolation);
    EXPECT_EQ(classify_s1_quotient(mixed, 0), Kind::S2xS5_PRODUCT);
}

TEST(CircleQuotient, KindMatchesModelCohomology)
{
    for (long l1 = -2; l1 <= 2; ++l1)
        for (long l2 = -2; l2 <= 2; ++l2)
            for (long al = -2; al <= 2; ++al) {
                if (l1 == 0 && l2 == 0 && al == 0)
                    continue;
                const std::vector<Integer> lambda{l1, l2};
                const Kind k = classify_s1_quotient(lambda, al);
                const auto model = circle_quotient_model(lambda, al);
                const int n = formal_dimension(model);
                EXPECT_EQ(n, 10);
                EXPECT_EQ(betti_numbers(model, n + 2), betti_numbers(canonical_circle_model(k, 2), n + 2));
            }
}

TEST(SquareClass, Examples)
{
    EXPECT_TRUE(square_class_isomorphic(1, 4));
    EXPECT_FALSE(square_class_isomorphic(1, 2));
    EXPECT_TRUE(square_class_isomorphic(3, 27));
    EXPECT_TRUE(square_class_isomorphic(Rational(Integer(2), Integer(3)), Rational(6)));
    EXPECT_FALSE(square_class_isomorphic(-1, 1));
    EXPECT_THROW(square_class_isomorphic(0, 1), PreconditionError);
    EXPECT_THROW(square_class_isomorphic(1, 0), PreconditionError);
}

TEST(SquareClass, EquivalenceRelation)
{
    std::vector<Rational> set;
    for (long p = -12; p <= 12; ++p)
        for (long q = 1; q <= 4; ++q)
            if (p != 0)
                set.emplace_back(Integer(p), Integer(q));
    for (const auto& a : set) {
        EXPECT_TRUE(square_class_isomorphic(a, a));
        for (const auto& b : set) {
            const bool ab = square_class_isomorphic(a, b);
            EXPECT_EQ(ab, square_class_isomorphic(b, a));
            EXPECT_EQ(ab, oracle::is_rational_square(b.num().get_si() * a.den().get_si(),
                                                     b.den().get_si() * a.num().get_si()));
        }
    }
    for (std::size_t i = 0; i < set.size(); i += 7)
        for (std::size_t j = 0; j < set.size(); j += 5)
            for (std::size_t k = 0; k < set.size(); k += 3)
                if (square_class_isomorphic(set[i], set[j]) && square_class_isomorphic(set[j], set[k]))
                    EXPECT_TRUE(square_class_isomorphic(set[i], set[k]));
}

TEST(DAlphaModel, BettiIndependentOfAlpha)
{
    const std::vector<std::size_t> four{1, 0, 2, 0, 1, 0, 0, 0};
    EXPECT_EQ(betti_numbers(build_d_alpha_model(-1, 0), 7), four);
    EXPECT_EQ(betti_numbers(build_d_alpha_model(1, 0), 7), four);
    const auto ref = betti_numbers(build_d_alpha_model(1, 1), 9);
    for (long a : {-11, -3, -2, 2, 3, 5, 7})
        EXPECT_EQ(betti_numbers(build_d_alpha_model(a, 1), 9), ref) << a;
    EXPECT_EQ(formal_dimension(build_d_alpha_model(1, 2)), 10);
    EXPECT_THROW(build_d_alpha_model(0, 0), PreconditionError);
    EXPECT_THROW(build_d_alpha_model(1, -1), PreconditionError);
    EXPECT_NE(build_d_alpha_model(1, 0), build_d_alpha_model(2, 0));
}

// --------------------------------------------------------------- models

TEST(Models, CanonicalT2Betti)
{
    const std::vector<std::size_t> s2s2{1, 0, 2, 0, 1, 0, 0, 0};
    EXPECT_EQ(betti_numbers(canonical_t2_model(Kind::S2xS2_PRODUCT, 2), 7), s2s2);
    EXPECT_EQ(betti_numbers(canonical_t2_model(Kind::CP2_CONNSUM_PRODUCT, 2), 7), s2s2);
    const std::vector<std::size_t> t1{1, 0, 2, 0, 0, 2, 0, 1};
    EXPECT_EQ(betti_numbers(canonical_t2_model(Kind::T1_S2xS2_PRODUCT, 3), 7), t1);
    EXPECT_THROW(canonical_t2_model(Kind::T1_S2xS2_PRODUCT, 2), PreconditionError);
    EXPECT_THROW(canonical_t2_model(Kind::CP2_PRODUCT, 3), PreconditionError);
}

TEST(Models, QuotientBettiMatchesCanonicalWithDuality)
{
    for (const auto& act : random_free_actions(2468, 60, 2)) {
        const Kind k = classify_t2_quotient(act).kind;
        const auto model = quotient_model(act);
        const int n = formal_dimension(model);
        ASSERT_EQ(n, 3 * static_cast<int>(act.factors()) - 2);
        const auto b = betti_numbers(model, n + 1);
        EXPECT_EQ(b, betti_numbers(canonical_t2_model(k, act.factors()), n + 1)) << act.to_string();
        EXPECT_EQ(b[static_cast<std::size_t>(n) + 1], 0U);
        for (int q = 0; q <= n; ++q)
            EXPECT_EQ(b[static_cast<std::size_t>(q)], b[static_cast<std::size_t>(n - q)]);
    }
}

TEST(Models, SquareMapOfPencils)
{
    const Rational z(0), o(1);
    const std::vector<BinaryQuadraticForm> squares{{o, z, z}, {z, z, o}};
    const auto q = degree_four_square_map(squares);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(isotropy_class(*q), IsotropyClass::isotropic);

    const std::vector<BinaryQuadraticForm> conn{{z, o, z}, {o, z, Rational(-1)}};
    EXPECT_EQ(isotropy_class(*degree_four_square_map(conn)), IsotropyClass::anisotropic_minus_one);

    const std::vector<BinaryQuadraticForm> full{{o, z, z}, {z, o, z}, {z, z, o}};
    EXPECT_FALSE(degree_four_square_map(full).has_value());
    const std::vector<BinaryQuadraticForm> one{{o, z, z}, {Rational(2), z, z}};
    EXPECT_FALSE(degree_four_square_map(one).has_value());
}

TEST(Kinds, StringsRoundTrip)
{
    for (Kind k : {Kind::S2xS2_PRODUCT, Kind::CP2_CONNSUM_PRODUCT, Kind::T1_S2xS2_PRODUCT, Kind::S2xS5_PRODUCT,
                   Kind::CP2_PRODUCT})
        EXPECT_EQ(parse_kind(to_string(k)), k);
    EXPECT_FALSE(parse_kind("S3").has_value());
    EXPECT_STREQ(to_string(Kind::CP2_CONNSUM_PRODUCT), "CP2_CONNSUM_PRODUCT");
}
