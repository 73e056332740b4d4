#include <doctest.h>

#include "support/fixtures.hpp"
#include "gtl/algebra.hpp"

using namespace gtl;

TEST_SUITE("algebra")
{
    TEST_CASE("composition")
    {
        const auto& t1 = fixture("T1");
        CHECK(compose(t1, T(t1, "b1", 1), T(t1, "a1", 1)) == T(t1, "a1", 2));
        // id_a then a turn leaving from a different arc.
        const ArcId a = t1.arc_of(t1.half_edge("a1"));
        REQUIRE(t1.arc_of(t1.rotate(t1.half_edge("a1"), 1)) != a);
        CHECK_FALSE(compose(t1, Angle::identity(a), T(t1, "a1", 1)).has_value());
        CHECK(compose(t1, T(t1, "a1", 3), Angle::identity(a)) == T(t1, "a1", 3));
        // Turns that do not meet at a half-edge.
        CHECK_FALSE(compose(t1, T(t1, "a1", 1), T(t1, "a1", 1)).has_value());
    }

    TEST_CASE("degrees")
    {
        const auto& t1 = fixture("T1");
        CHECK(degree(T(t1, "a1", 1)) == 1);
        CHECK(reduced_degree(T(t1, "a1", 1)) == 0);
        CHECK(degree(Angle::identity(0)) == 0);
        CHECK(reduced_degree(Angle::identity(0)) == 1);
        CHECK(degree(T(t1, "a1", 4)) == 0);
    }

    TEST_CASE("mu2 signs and unitality")
    {
        const auto& t1 = fixture("T1");
        CHECK(mu2(t1, Morphism(T(t1, "b1", 1)), Morphism(T(t1, "a1", 1))) == -Morphism(T(t1, "a1", 2)));
        for (HalfEdge h = 0; h < t1.num_half_edges(); ++h)
            for (int s = 1; s <= 5; ++s) {
                const Angle x = Angle::turn(h, s);
                CHECK(mu2(t1, Morphism(x), Morphism(Angle::identity(source_arc(t1, x)))) == Morphism(x));
                Morphism signed_x(x, degree(x) ? -1 : 1);
                CHECK(mu2(t1, Morphism(Angle::identity(target_arc(t1, x))), Morphism(x)) == signed_x);
            }
    }

    TEST_CASE("full turns")
    {
        const auto& t1 = fixture("T1");
        Morphism want;
        for (const char* h : {"a1", "b1", "a2", "b2"}) want.add(T(t1, h, 4), 1);
        CHECK(ell_power(t1, 0, 1) == want);
        const auto& s3 = fixture("S3");
        Morphism want2;
        want2.add(T(s3, "xp", 4), 1);
        want2.add(T(s3, "zp", 4), 1);
        CHECK(ell_power(s3, s3.puncture("p"), 2) == want2);
        for (const char* name : {"T1", "S3", "G2"}) {
            const auto& sys = fixture(name);
            for (PunctureId p = 0; p < sys.num_punctures(); ++p)
                for (int r = 1; r <= 3; ++r) CHECK(static_cast<int>(ell_power(sys, p, r).size()) == sys.valence(p));
        }
    }

    TEST_CASE("complements to full turns")
    {
        const auto& t1 = fixture("T1");
        CHECK(complement_to_turns(t1, T(t1, "a1", 1), 1) == T(t1, "b1", 3));
        CHECK(complement_to_turns(t1, T(t1, "a1", 4), 2) == T(t1, "a1", 4));
        for (const char* name : {"T1", "S3", "G2"}) {
            const auto& sys = fixture(name);
            for (HalfEdge h = 0; h < sys.num_half_edges(); ++h) {
                const int val = sys.valence(sys.puncture_of(h));
                for (int r = 1; r <= 2; ++r)
                    for (int s = 1; s < r * val; ++s) {
                        const Angle a = Angle::turn(h, s);
                        CHECK(compose(sys, complement_to_turns(sys, a, r), a) == Angle::turn(h, r * val));
                    }
            }
        }
    }

    TEST_CASE("morphism arithmetic cancels exactly")
    {
        const auto& t1 = fixture("T1");
        Morphism x;
        x.add(T(t1, "a1", 2), Rational(1, 3));
        x.add(T(t1, "a1", 2), Rational(-1, 3));
        CHECK(x.is_zero());
        Morphism y(T(t1, "b1", 1), 2);
        y -= Morphism(T(t1, "b1", 1), 2);
        CHECK(y.is_zero());
        CHECK(render(t1, Morphism(T(t1, "a1", 2), Rational(-1, 2))).find("a1") != std::string::npos);
    }
}
