#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "tmq/box_mesh.hpp"
#include "tmq/errors.hpp"
#include "tmq/hilbert.hpp"
#include "tmq/io.hpp"
#include "tmq/locate.hpp"
#include "test_support.hpp"

using namespace tmq;

TEST_CASE("vertex rows parse with ids and coordinates") {
    const test::TempDir tmp;
    test::write_text(tmp.file("v.csv"), "7,0.5,1.0,-2.0\n8,0,0,0\n");
    const auto verts = load_vertices_csv(tmp.file("v.csv"));
    REQUIRE(verts.size() == 2);
    CHECK(verts[0].id == 7);
    CHECK(verts[0].pos == Vec3{0.5, 1.0, -2.0});
}

TEST_CASE("an empty vertices file is an empty list") {
    const test::TempDir tmp;
    test::write_text(tmp.file("v.csv"), "");
    CHECK(load_vertices_csv(tmp.file("v.csv")).empty());
}

TEST_CASE("parse errors carry the line number") {
    const test::TempDir tmp;
    SUBCASE("NaN coordinate") {
        test::write_text(tmp.file("v.csv"), "7,0.5,NaN,0\n");
        CHECK_THROWS_WITH_AS((void)load_vertices_csv(tmp.file("v.csv")),
                             doctest::Contains(":1:"), ParseError);
    }
    SUBCASE("bad field count") {
        test::write_text(tmp.file("v.csv"), "1,0,0,0\n2,0,0\n");
        CHECK_THROWS_WITH_AS((void)load_vertices_csv(tmp.file("v.csv")),
                             doctest::Contains(":2:"), ParseError);
    }
    SUBCASE("duplicate vertex id") {
        test::write_text(tmp.file("v.csv"), "1,0,0,0\n1,1,1,1\n");
        CHECK_THROWS_AS((void)load_vertices_csv(tmp.file("v.csv")), ParseError);
    }
    SUBCASE("garbage integer") {
        test::write_text(tmp.file("v.csv"), "x,0,0,0\n");
        CHECK_THROWS_AS((void)load_vertices_csv(tmp.file("v.csv")), ParseError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS((void)load_vertices_csv(tmp.file("nope.csv")), ParseError);
    }
}

TEST_CASE("tet rows parse in quadruple layout") {
    const test::TempDir tmp;
    test::write_text(tmp.file("t.csv"), "1,12,4711,841,3\n");
    const auto tets = load_tets_csv(tmp.file("t.csv"));
    REQUIRE(tets.size() == 1);
    CHECK(tets[0].elem_id == 1);
    CHECK(tets[0].v == std::array<VertexId, 4>{12, 4711, 841, 3});

    SUBCASE("duplicate element id") {
        test::write_text(tmp.file("t.csv"), "1,0,1,2,3\n1,4,5,6,7\n");
        CHECK_THROWS_AS((void)load_tets_csv(tmp.file("t.csv")), ParseError);
    }
    SUBCASE("four fields only") {
        test::write_text(tmp.file("t.csv"), "1,0,1,2\n");
        CHECK_THROWS_AS((void)load_tets_csv(tmp.file("t.csv")), ParseError);
    }
}

TEST_CASE("tab delimiter is supported") {
    const test::TempDir tmp;
    test::write_text(tmp.file("v.tsv"), "1\t0.25\t0.5\t0.75\n");
    const auto verts = load_vertices_csv(tmp.file("v.tsv"), '\t');
    REQUIRE(verts.size() == 1);
    CHECK(verts[0].pos == Vec3{0.25, 0.5, 0.75});
}

TEST_CASE("CRLF line endings are tolerated") {
    const test::TempDir tmp;
    test::write_text(tmp.file("v.csv"), "1,0,0,0\r\n2,1,1,1\r\n");
    CHECK(load_vertices_csv(tmp.file("v.csv")).size() == 2);
}

TEST_CASE("csv save -> load is a fixed point after the first pass") {
    const MeshStore store = generate_box(2, 2, 2, {{-1.1, 0.3, 2.7}, {4.9, 5.1, 6.3}});
    const test::TempDir tmp;
    save_vertices_csv(store, tmp.file("v1.csv"));
    save_tets_csv(store, tmp.file("t1.csv"));

    MeshStore reloaded;
    const auto vs = load_vertices_csv(tmp.file("v1.csv"));
    const auto ts = load_tets_csv(tmp.file("t1.csv"));
    reloaded.add_vertices(vs);
    reloaded.add_tets(ts);
    reloaded.freeze();
    save_vertices_csv(reloaded, tmp.file("v2.csv"));
    save_tets_csv(reloaded, tmp.file("t2.csv"));

    CHECK(test::read_text(tmp.file("v1.csv")) == test::read_text(tmp.file("v2.csv")));
    CHECK(test::read_text(tmp.file("t1.csv")) == test::read_text(tmp.file("t2.csv")));

    // values round-trip bit exactly
    for (std::size_t v = 0; v < store.vertex_count(); ++v)
        CHECK(vs[v].pos == store.vertex_position_at(static_cast<std::int32_t>(v)));
}

TEST_CASE("field csv must cover every vertex") {
    MeshStore store;
    store.add_vertex({0, {0, 0, 0}});
    store.add_vertex({1, {1, 0, 0}});
    store.add_vertex({2, {0, 1, 0}});
    store.add_vertex({3, {0, 0, 1}});
    store.add_tet({0, {0, 1, 2, 3}});
    store.freeze();

    const test::TempDir tmp;
    test::write_text(tmp.file("f.csv"), "0,1.5\n1,2.5\n2,3.5\n3,4.5\n");
    const NodalField f = load_field_csv(store, tmp.file("f.csv"));
    CHECK(f.value_of(store, 2) == 3.5);

    test::write_text(tmp.file("partial.csv"), "0,1.5\n");
    CHECK_THROWS_AS((void)load_field_csv(store, tmp.file("partial.csv")),
                    InvalidArgumentError);
    test::write_text(tmp.file("unknown.csv"), "9,1.5\n");
    CHECK_THROWS_AS((void)load_field_csv(store, tmp.file("unknown.csv")), ParseError);
}

TEST_CASE("archive round trip is byte identical") {
    MeshStore store = generate_box(3, 2, 2, {{-2, -3, -4}, {5, 6, 7}});
    assign_hcodes(store, Quantizer(store.bounds()));

    const test::TempDir tmp;
    save_archive(store, tmp.file("a.tmq"));
    const MeshStore loaded = load_archive(tmp.file("a.tmq"));
    save_archive(loaded, tmp.file("b.tmq"));
    CHECK(test::read_text(tmp.file("a.tmq")) == test::read_text(tmp.file("b.tmq")));

    CHECK(loaded.vertex_count() == store.vertex_count());
    CHECK(loaded.tet_count() == store.tet_count());
    CHECK(loaded.frozen());
    CHECK(loaded.has_hcodes());
    for (std::size_t t = 0; t < store.tet_count(); ++t)
        CHECK(loaded.hcode_at(static_cast<std::int32_t>(t)) ==
              store.hcode_at(static_cast<std::int32_t>(t)));
    CHECK(loaded.quantizer().bits() == store.quantizer().bits());
}

TEST_CASE("archives without hcodes round trip too") {
    const MeshStore store = generate_box(1, 1, 1);
    const test::TempDir tmp;
    save_archive(store, tmp.file("a.tmq"));
    const MeshStore loaded = load_archive(tmp.file("a.tmq"));
    CHECK_FALSE(loaded.has_hcodes());
    CHECK(loaded.tet_count() == 6);
}

TEST_CASE("corrupt archives are rejected") {
    const test::TempDir tmp;
    MeshStore store = generate_box(1, 1, 1);
    assign_hcodes(store, Quantizer(store.bounds()));
    save_archive(store, tmp.file("a.tmq"));

    SUBCASE("bad magic") {
        std::string data = test::read_text(tmp.file("a.tmq"));
        data[0] = 'X';
        test::write_text(tmp.file("bad.tmq"), data);
        CHECK_THROWS_AS((void)load_archive(tmp.file("bad.tmq")), ArchiveError);
    }
    SUBCASE("bad version") {
        std::string data = test::read_text(tmp.file("a.tmq"));
        data[4] = 9;
        test::write_text(tmp.file("bad.tmq"), data);
        CHECK_THROWS_AS((void)load_archive(tmp.file("bad.tmq")), ArchiveError);
    }
    SUBCASE("truncation") {
        const std::string data = test::read_text(tmp.file("a.tmq"));
        test::write_text(tmp.file("bad.tmq"), data.substr(0, data.size() / 2));
        CHECK_THROWS_AS((void)load_archive(tmp.file("bad.tmq")), ArchiveError);
    }
    SUBCASE("trailing bytes") {
        std::string data = test::read_text(tmp.file("a.tmq"));
        data += "junk";
        test::write_text(tmp.file("bad.tmq"), data);
        CHECK_THROWS_AS((void)load_archive(tmp.file("bad.tmq")), ArchiveError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS((void)load_archive(tmp.file("nope.tmq")), ArchiveError);
    }
}

TEST_CASE("a generated box archive loads and validates clean") {
    MeshStore store = generate_box(4, 4, 4);
    assign_hcodes(store, Quantizer(store.bounds()));
    const test::TempDir tmp;
    save_archive(store, tmp.file("box.tmq"));
    const MeshStore loaded = load_archive(tmp.file("box.tmq"));
    CHECK(validate_mesh(loaded).clean());
    // hcodes came from the archive and match a recomputation
    for (std::size_t t = 0; t < loaded.tet_count(); ++t) {
        const auto ti = static_cast<std::int32_t>(t);
        CHECK(loaded.hcode_at(ti) ==
              h_encode(loaded.quantizer().quantize(loaded.centroid_at(ti))));
    }
}

TEST_CASE("generator counts and orientation") {
    SUBCASE("1x1x1") {
        const MeshStore store = generate_box(1, 1, 1);
        CHECK(store.vertex_count() == 8);
        CHECK(store.tet_count() == 6);
    }
    SUBCASE("3x3x3") {
        const MeshStore store = generate_box(3, 3, 3);
        CHECK(store.vertex_count() == 64);
        CHECK(store.tet_count() == 162);
    }
    SUBCASE("positive volumes and centroid containment") {
        const MeshStore store = generate_box(2, 3, 1, {{0, -1, 5}, {2, 4, 8}});
        for (std::size_t t = 0; t < store.tet_count(); ++t) {
            const auto ti = static_cast<std::int32_t>(t);
            CHECK(signed_volume(store.corners_at(ti)) > 0.0);
            CHECK(point_in_tet(store.corners_at(ti), store.centroid_at(ti)));
        }
    }
    SUBCASE("bad arguments") {
        CHECK_THROWS_AS((void)generate_box(0, 1, 1), InvalidArgumentError);
        CHECK_THROWS_AS((void)generate_box(1, -2, 1), InvalidArgumentError);
    }
}

TEST_CASE("locate and interp writers emit the documented layouts") {
    const test::TempDir tmp;
    const std::vector<Vec3> pts{{0.5, 0.25, 0.125}, {9, 9, 9}};
    const std::vector<LocateResult> res{{3, 1, 3}, {kNoElement, 0, kNoElement}};
    write_locate_csv(tmp.file("loc.csv"), pts, res);
    CHECK(test::read_text(tmp.file("loc.csv")) == "0.5,0.25,0.125,3\n9,9,9,-1\n");

    const std::vector<double> vals{1.5, std::numeric_limits<double>::quiet_NaN()};
    write_interp_csv(tmp.file("f.csv"), pts, vals);
    CHECK(test::read_text(tmp.file("f.csv")) == "0.5,0.25,0.125,1.5\n9,9,9,nan\n");
}
