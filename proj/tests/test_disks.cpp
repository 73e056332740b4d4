#include <doctest.h>

#include <map>

#include "gtl/disks.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"

using namespace gtl;

namespace {

std::vector<Angle> face_word(const ArcSystem& sys, int f)
{
    std::vector<Angle> w;
    for (HalfEdge h : sys.faces()[f].corners) w.push_back(Angle::turn(h, 1));
    return w;
}

bf::Word as_bf(std::span<const Angle> w)
{
    bf::Word out;
    for (Angle a : w) out.emplace_back(a.start(), a.steps());
    return out;
}

std::vector<Angle> from_bf(const bf::Word& w)
{
    std::vector<Angle> out;
    for (auto [h, s] : w) out.push_back(Angle::turn(h, s));
    return out;
}

}  // namespace

TEST_SUITE("disks")
{
    TEST_CASE("single-face catalog on T1")
    {
        const auto& t1 = fixture("T1");
        auto cat = DiskCatalog::build(t1, {1, 8, 8});
        REQUIRE(cat.disks().size() == 1);
        const auto& d = cat.disks()[0];
        CHECK(d.corner_count() == 4);
        for (Angle a : d.boundary) CHECK(a.steps() == 1);
    }

    TEST_CASE("two-face disks on T1")
    {
        const auto& t1 = fixture("T1");
        auto cat = DiskCatalog::build(t1, {2, 8, 8});
        int two = 0;
        for (const auto& d : cat.disks()) {
            if (d.face_count() != 2) continue;
            ++two;
            CHECK(d.corner_count() == 6);
            int doubled = 0;
            for (Angle a : d.boundary) doubled += a.steps() == 2;
            CHECK(doubled == 2);
        }
        // The four boundary edges give only two disks up to relabelling.
        CHECK(two == 2);
    }

    TEST_CASE("two-face disks on S3")
    {
        const auto& s3 = fixture("S3");
        auto cat = DiskCatalog::build(s3, {2, 6, 6});
        int two = 0;
        for (const auto& d : cat.disks()) {
            if (d.face_count() != 2) continue;
            ++two;
            CHECK(d.corner_count() == 4);
            int doubled = 0;
            for (Angle a : d.boundary) doubled += a.steps() == 2;
            CHECK(doubled == 2);
        }
        CHECK(two == 3);
    }

    TEST_CASE("catalog agrees with the brute-force gluing oracle")
    {
        for (const char* name : {"T1", "S3", "S4_tetra"}) {
            const auto& sys = fixture(name);
            for (int faces = 1; faces <= 3; ++faces) {
                CAPTURE(name);
                CAPTURE(faces);
                auto brute = bf::enumerate_disks(sys, faces);
                auto cat = DiskCatalog::build(sys, {faces, 64, 64});
                std::map<bf::Word, int> want, got;
                for (const auto& d : brute) ++want[bf::least_rotation(d.word)];
                for (const auto& d : cat.disks()) ++got[bf::least_rotation(as_bf(d.boundary))];
                CHECK(want == got);
                CHECK(cat.disks().size() == brute.size());

                CuttingOracle oracle(sys);
                for (const auto& d : brute)
                    for (std::size_t k = 0; k < d.word.size(); ++k) {
                        bf::Word w(d.word.begin() + k, d.word.end());
                        w.insert(w.end(), d.word.begin(), d.word.begin() + k);
                        const auto linear = from_bf(w);
                        const auto expected = bf::witnesses(brute, w);
                        CHECK(oracle.count(linear) == expected);
                        CHECK(static_cast<std::int64_t>(cat.find(linear).size()) == expected);
                    }
            }
        }
    }

    TEST_CASE("catalog disks have no digons and even reduced-degree sums")
    {
        for (const char* name : {"T1", "S3", "G2"}) {
            const auto& sys = fixture(name);
            auto cat = DiskCatalog::build(sys, {3, 64, 64});
            for (const auto& d : cat.disks()) {
                CHECK(d.corner_count() >= 3);
                int sum = 0;
                for (Angle a : d.boundary) sum += reduced_degree(a);
                CHECK(sum % 2 == 0);
                CHECK(passes_disk_prefilter(sys, d.boundary));
                CHECK(implied_face_count(d.boundary) == d.face_count());
            }
        }
    }

    TEST_CASE("glue_across grows the word by face size minus two")
    {
        const auto& s3 = fixture("S3");
        auto d = single_face_disk(s3, 0);
        auto e = glue_across(s3, d, 0);
        CHECK(e.corner_count() == d.corner_count() + 1);
        const auto& g2 = fixture("G2");
        auto g = glue_across(g2, single_face_disk(g2, 0), 3);
        CHECK(g.corner_count() == 8 + 6);
        CHECK(canonical_tree(g2, g) != canonical_tree(g2, glue_across(g2, single_face_disk(g2, 0), 4)));
    }

    TEST_CASE("find_disk")
    {
        const auto& t1 = fixture("T1");
        auto cat = DiskCatalog::build(t1, {2, 8, 8});
        const auto u = face_word(t1, 0);
        CHECK(cat.find(u).size() == 1);
        std::vector<Angle> same(4, u[0]);
        CHECK(cat.find(same).empty());
        for (Angle a : u)
            for (Angle b : u) {
                std::vector<Angle> two{a, b};
                CHECK(cat.find(two).empty());
            }
        // Outside the bounds the catalog refuses to answer.
        std::vector<Angle> big{Angle::turn(0, 9), u[1], u[2], u[3]};
        CHECK_THROWS_AS(cat.find(big), OutOfBounds);
    }

    TEST_CASE("higher products on the square")
    {
        const auto& t1 = fixture("T1");
        CuttingOracle oracle(t1);
        const auto u = face_word(t1, 0);
        // All four corners in: the identity of the arc joining the ends.
        const Morphism all_in = mu_k(oracle, u);
        REQUIRE(all_in.size() == 1);
        const Angle id = all_in.begin()->first;
        CHECK(id.is_identity());
        CHECK(id.arc() == source_arc(t1, u[0]));
        CHECK(id.arc() == target_arc(t1, u[3]));
        CHECK(all_in.begin()->second == 1);

        // Last argument extended by the indecomposable after it: output is
        // that indecomposable.
        const Angle beta = Angle::turn(end_half_edge(t1, u[3]), 1);
        const auto extended = compose(t1, beta, u[3]);
        REQUIRE(extended);
        std::vector<Angle> args{u[0], u[1], u[2], *extended};
        CHECK(mu_k(oracle, args) == Morphism(beta));

        // Identities kill higher products.
        std::vector<Angle> with_id{u[0], Angle::identity(target_arc(t1, u[0])), u[2], u[3]};
        CHECK(mu_k(oracle, with_id).is_zero());
        CHECK(mu_k(oracle, std::vector<Angle>{u[0]}).is_zero());
    }

    TEST_CASE("A-infinity defect vanishes on small bounds")
    {
        for (const char* name : {"T1", "S3"}) {
            const auto& sys = fixture(name);
            CuttingOracle oracle(sys);
            std::vector<Angle> turns;
            for (ArcId a = 0; a < sys.num_arcs(); ++a) turns.push_back(Angle::identity(a));
            for (HalfEdge h = 0; h < sys.num_half_edges(); ++h)
                for (int s = 1; s <= 2; ++s) turns.push_back(Angle::turn(h, s));
            // Arity <= 4 by hand-rolled loops.
            std::vector<Angle> seq;
            std::function<void()> walk = [&] {
                CHECK(a_infinity_defect(oracle, seq).is_zero());
                if (seq.size() == 4) return;
                for (Angle x : turns) {
                    if (!seq.empty() && target_arc(sys, seq.back()) != source_arc(sys, x)) continue;
                    seq.push_back(x);
                    walk();
                    seq.pop_back();
                }
            };
            walk();
        }
    }

    TEST_CASE("catalog oracle matches the cutting oracle inside its bounds")
    {
        const auto& s3 = fixture("S3");
        auto cat = DiskCatalog::build(s3, {3, 8, 3});
        CatalogOracle co(cat);
        CuttingOracle cut(s3);
        for (const auto& d : cat.disks()) {
            CHECK(co.count(d.boundary) == cut.count(d.boundary));
            CHECK(mu_k(co, d.boundary) == mu_k(cut, d.boundary));
        }
    }

    TEST_CASE("memory cap gives a clean error")
    {
        setenv("GTL_HH_MAX_MEMORY_MB", "1", 1);
        CHECK_THROWS_AS(DiskCatalog::build(fixture("G2"), {12, 200, 64}), CatalogTooLarge);
        unsetenv("GTL_HH_MAX_MEMORY_MB");
    }
}
