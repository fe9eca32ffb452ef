#include <doctest.h>

#include <random>
#include <sstream>

#include "kindex/ingest.hpp"
#include "support/oracles.hpp"

using namespace kindex;

TEST_SUITE("ingest") {

TEST_CASE("empty input parses to an empty bundle")
{
    auto r = parse_publications("");
    CHECK(r.ok());
    CHECK(r.value.publications.empty());
    CHECK(r.value.citations.empty());
}

TEST_CASE("one publication and one citation")
{
    const std::string text =
        "# comment\n"
        "type=pub\tpub_id=P1\tyear=2021\tauthors=A,B,C\tcorresponding=B\tvenue_tier=Q1\tfwci=1.25\t"
        "institutions=A:Nazarbayev University|C:KazNU\n"
        "\n"
        "type=cite\tciting_pub=X9\tcited_pub=P1\tciting_authors=Q\tciting_institutions=MIT|ENU\tmentions=3\n";
    auto r = parse_publications(text);
    REQUIRE(r.ok());
    REQUIRE(r.value.publications.size() == 1);
    REQUIRE(r.value.citations.size() == 1);
    const auto& p = r.value.publications[0];
    CHECK(p.authors == std::vector<AuthorId>{"A", "B", "C"});
    CHECK(p.corresponding == std::set<AuthorId>{"B"});
    CHECK(p.venue_tier == VenueTier::Q1);
    CHECK(*p.fwci == 1.25);
    CHECK(p.indexed);
    CHECK_FALSE(p.alphabetical_order);
    CHECK(p.institution_by_author.at("A") == "Nazarbayev University");
    const auto& c = r.value.citations[0];
    CHECK(c.mention_count == 3);
    CHECK(c.citing_institutions == std::set<std::string>{"ENU", "MIT"});
    CHECK(c.citing_indexed);
}

TEST_CASE("dangling citation is a referential-integrity error naming the id")
{
    auto r = parse_publications("type=pub\tpub_id=P1\tyear=2021\tauthors=A\n"
                                "type=cite\tciting_pub=X\tcited_pub=NOPE\n");
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].line == 2);
    CHECK(r.errors[0].message.find("NOPE") != std::string::npos);
    CHECK(r.value.publications.empty());  // nothing accepted
}

TEST_CASE("malformed lines carry their line numbers")
{
    auto r = parse_publications("type=pub\tpub_id=P1\tyear=20x1\tauthors=A\n"
                                "type=pub\tpub_id=P2\tyear=2020\tauthors=A,A\n"
                                "type=pub\tpub_id=P3\tyear=2020\tauthors=A\tcolour=red\n"
                                "type=book\tpub_id=P4\n"
                                "type=pub\tpub_id=P5\tyear=2020\n"
                                "type=cite\tciting_pub=P5\tcited_pub=P5\n"
                                "type=pub\tpub_id=P6\tyear=2020\tauthors=A\tfwci=-1\n"
                                "type=pub\tpub_id=P7\tyear=2020\tyear=2021\tauthors=A\n"
                                "type=pub\tpub_id=P8\tyear=2020\tauthors=A\n"
                                "type=pub\tpub_id=P8\tyear=2020\tauthors=B\n");
    REQUIRE(r.errors.size() == 9);
    for (std::size_t i = 0; i < 8; ++i) CHECK(r.errors[i].line == i + 1);
    CHECK(r.errors[8].line == 10);
    CHECK(r.errors[1].message.find("twice") != std::string::npos);
    CHECK(r.errors[2].message.find("colour") != std::string::npos);
    CHECK(r.errors[8].message.find("duplicate pub_id") != std::string::npos);
}

TEST_CASE("optional publication fields")
{
    auto r = parse_publications("type=pub\tpub_id=P\tyear=1999\tauthors=A,B\tfwci=-\tindexed=false\t"
                                "alphabetical=true\tflags=ERRONEOUS,NONSCIENTIFIC\tvenue_tier=BOOK\n");
    REQUIRE(r.ok());
    const auto& p = r.value.publications[0];
    CHECK_FALSE(p.fwci.has_value());
    CHECK_FALSE(p.indexed);
    CHECK(p.alphabetical_order);
    CHECK(p.flags.size() == 2);
    CHECK(p.venue_tier == VenueTier::Book);
}

TEST_CASE("serialized bundles parse back identically")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        CorpusBundle b;
        const int npubs = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < npubs; ++i) {
            std::vector<AuthorId> pool = {"a1", "b2", "c3", "d4", "e5"};
            std::shuffle(pool.begin(), pool.end(), rng);
            pool.resize(1 + rng() % 5);
            auto p = test::make_pub("P" + std::to_string(i), 1990 + static_cast<int>(rng() % 30), pool);
            if (rng() % 2) p.corresponding.insert(pool.back());
            if (rng() % 2) p.fwci = static_cast<double>(rng() % 10000) / 997.0;
            p.indexed = rng() % 4 != 0;
            p.alphabetical_order = rng() % 5 == 0;
            p.venue_tier = static_cast<VenueTier>(rng() % 6);
            if (rng() % 6 == 0) p.flags.insert(PubFlag::Erroneous);
            if (rng() % 2) p.institution_by_author[pool.front()] = "Inst " + std::to_string(rng() % 3);
            b.publications.push_back(p);
        }
        const int ncites = static_cast<int>(rng() % 10);
        for (int i = 0; i < ncites; ++i) {
            auto c = test::make_cite("C" + std::to_string(rng() % 6), "P" + std::to_string(rng() % npubs),
                                     {"z" + std::to_string(rng() % 3)}, 1 + static_cast<int>(rng() % 4));
            c.citing_indexed = rng() % 3 != 0;
            if (rng() % 2) c.citing_institutions = {"Inst 1", "Other place"};
            b.citations.push_back(c);
        }
        std::ostringstream out;
        write_publications(out, b);
        auto back = parse_publications(out.str());
        REQUIRE(back.ok());
        CHECK(back.value == b);
    }
}

TEST_CASE("summary row with percentages and thousand grouping")
{
    const std::string text =
        "author\tname\tH\tDOC\tCIT\tFA\tFWCI1\tLA\tFWCI2\tCoA\tFWCI3\tCorA\tFWCI4\tSA\tFWCI5\n"
        "myrzakulov_r\tMyrzakulov Ratbay\t48\t294\t7 765\t9%\t1.775\t61%\t1.292\t30%\t1.337\t3%\t0.732\t0\t-\n";
    auto r = parse_author_summaries(text);
    REQUIRE(r.ok());
    REQUIRE(r.value.rows.size() == 1);
    const auto& row = r.value.rows[0];
    CHECK(row.display_name == "Myrzakulov Ratbay");
    CHECK(*row.h_index == 48);
    CHECK(*row.doc == 294);
    CHECK(*row.cit == 7765);
    CHECK(*row.shares[index_of(Role::FA)] == doctest::Approx(0.09));
    CHECK(*row.role_fwci[index_of(Role::FA)] == doctest::Approx(1.775));
    CHECK(*row.shares[index_of(Role::LA)] == doctest::Approx(0.61));
    CHECK(*row.role_fwci[index_of(Role::LA)] == doctest::Approx(1.292));
    CHECK(*row.shares[index_of(Role::CoA)] == doctest::Approx(0.30));
    CHECK(*row.role_fwci[index_of(Role::CoA)] == doctest::Approx(1.337));
    CHECK(*row.shares[index_of(Role::CorA)] == doctest::Approx(0.03));
    CHECK(*row.role_fwci[index_of(Role::CorA)] == doctest::Approx(0.732));
    CHECK(*row.shares[index_of(Role::SA)] == 0.0);
    CHECK_FALSE(row.role_fwci[index_of(Role::SA)].has_value());
}

TEST_CASE("dash cells stay absent and the row is accepted")
{
    auto r = parse_author_summaries("author;CIT/DOC;WFCI;k_r;K\n"
                                    "shaikenov_b;27;-;-;27\n"
                                    "nurkeeva_z;17,83;(1);0,5;18\n");
    REQUIRE(r.ok());
    CHECK_FALSE(r.value.rows[0].fwci_total.has_value());
    CHECK_FALSE(r.value.rows[0].k_r.has_value());
    CHECK(*r.value.rows[0].cit_per_doc == 27.0);
    CHECK(*r.value.rows[1].cit_per_doc == doctest::Approx(17.83));
    CHECK_FALSE(r.value.rows[1].fwci_total.has_value());
    CHECK(*r.value.rows[1].k_r == doctest::Approx(0.5));
    CHECK(*r.value.rows[1].reported_k == 18);
}

TEST_CASE("header-only summary file is an empty table")
{
    auto r = parse_author_summaries("author\tH\tDOC\tCIT\n");
    REQUIRE(r.ok());
    CHECK(r.value.rows.empty());
    CHECK(r.value.has_column("DOC"));
}

TEST_CASE("summary validation errors")
{
    CHECK_FALSE(parse_author_summaries("author\tH\tDOC\nx\t12\t10\n").ok());  // H > DOC
    CHECK_FALSE(parse_author_summaries("author\tH\tDOC\nx\t-3\t10\n").ok());  // negative
    CHECK_FALSE(parse_author_summaries("author\tCIT\nx\t-1\n").ok());
    CHECK_FALSE(parse_author_summaries("author\tDOC\nx\t0\n").ok());
    CHECK_FALSE(parse_author_summaries("author\tFA\nx\t140%\n").ok());
    CHECK_FALSE(parse_author_summaries("author\tH\nx\t1\t2\n").ok());  // cell count
    CHECK_FALSE(parse_author_summaries("author\tshoe size\nx\t1\n").ok());
    CHECK_FALSE(parse_author_summaries("H\tDOC\n1\t2\n").ok());  // no author column
    CHECK_FALSE(parse_author_summaries("author\tH\nx\t1\nx\t2\n").ok());
    auto bad = parse_author_summaries("author\tH\tDOC\nx\t1\t2\ny\tabc\t3\n");
    REQUIRE(bad.errors.size() == 1);
    CHECK(bad.errors[0].line == 3);
    CHECK(bad.errors[0].message.find("'H'") != std::string::npos);
}

TEST_CASE("printed tables load")
{
    auto t1 = parse_author_summaries(test::slurp(test::source_path("data/table1_natural_sciences.tsv")));
    REQUIRE(t1.ok());
    CHECK(t1.value.rows.size() == 21);
    // Atabaev's FA cell is printed without a percent sign.
    const auto& atabaev = t1.value.rows[8];
    CHECK(atabaev.author == "atabaev_t");
    CHECK(*atabaev.shares[index_of(Role::FA)] == doctest::Approx(0.27));

    auto t2 = parse_author_summaries(test::slurp(test::source_path("data/table2_k_rating.tsv")));
    REQUIRE(t2.ok());
    CHECK(t2.value.rows.size() == 47);
}

TEST_CASE("config defaults and overrides")
{
    auto empty = load_config("");
    REQUIRE(empty.ok());
    CHECK(empty.value.filter == FilterConfig{});
    CHECK(empty.value.filter.require_indexed_source);
    CHECK(empty.value.filter.one_per_author_per_source);
    CHECK(empty.value.analysis.precision == 2);

    auto one = load_config("# only self\nexclude_self_citations=false\n");
    REQUIRE(one.ok());
    FilterConfig expected;
    expected.exclude_self = false;
    CHECK(one.value.filter == expected);

    auto more = load_config("rank_key = h_index  # trailing comment\nprecision=4\nalphabetical_field=true\n"
                            "k_p.konarov_a=1.5\nk_c.konarov_a=0.25\n");
    REQUIRE(more.ok());
    CHECK(more.value.analysis.rank_key == RankKey::HIndex);
    CHECK(more.value.analysis.precision == 4);
    CHECK(more.value.analysis.alphabetical_field);
    CHECK(more.value.analysis.k_p.at("konarov_a") == 1.5);
    CHECK(more.value.analysis.k_c.at("konarov_a") == 0.25);
}

TEST_CASE("config errors")
{
    auto dup = load_config("dedupe_per_document=true\ndedupe_per_document=false\n");
    REQUIRE(dup.errors.size() == 1);
    CHECK(dup.errors[0].line == 2);
    CHECK(dup.errors[0].message.find("dedupe_per_document") != std::string::npos);

    CHECK_FALSE(load_config("no_such_rule=true\n").ok());
    CHECK_FALSE(load_config("exclude_flagged=maybe\n").ok());
    CHECK_FALSE(load_config("precision=fifty\n").ok());
    CHECK_FALSE(load_config("rank_key=citations\n").ok());
    CHECK_FALSE(load_config("k_p.someone=-1\n").ok());
    CHECK_FALSE(load_config("just words\n").ok());
}

}
