#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "kindex/cli.hpp"
#include "support/oracles.hpp"

using namespace kindex;
namespace fs = std::filesystem;

namespace {

const std::string kTable1 = test::source_path("data/table1_natural_sciences.tsv");
const std::string kTable2 = test::source_path("data/table2_k_rating.tsv");

struct TempDir {
    fs::path path;
    TempDir()
    {
        static int counter = 0;
        path = fs::temp_directory_path() / ("kindex_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    std::string write(const std::string& name, const std::string& text) const
    {
        const auto p = path / name;
        std::ofstream(p, std::ios::binary) << text;
        return p.string();
    }
};

std::vector<std::string> lines_of(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> fields(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string f; in >> f;) out.push_back(f);
    return out;
}

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args)
{
    args.insert(args.begin(), "kindex");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string yearly_corpus_text()
{
    std::ostringstream ss;
    write_publications(ss, test::build_yearly_corpus(test::table4_rows()));
    return ss.str();
}

const std::string kSmallCorpus =
    "type=pub\tpub_id=P1\tyear=2020\tauthors=A,B\tcorresponding=A\tfwci=1.5\n"
    "type=pub\tpub_id=P2\tyear=2021\tauthors=A\n"
    "type=cite\tciting_pub=X\tcited_pub=P1\tciting_authors=Q\n"
    "type=cite\tciting_pub=Y\tcited_pub=P1\tciting_authors=A\tmentions=2\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("metrics over the ranking table prints one row per author")
{
    const auto r = run({"metrics", "--summary", kTable2});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    CHECK(lines.size() == 48);  // header + 47 printed rows
    CHECK(fields(lines[0])[0] == "author");
    CHECK(lines[1].starts_with("konarov_a"));
}

TEST_CASE("metrics restricted to one author")
{
    const auto r = run({"metrics", "--summary", kTable2, "--author", "konarov_a"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    const auto header = fields(lines[0]);
    const auto row = fields(lines[1]);
    const auto k = std::find(header.begin(), header.end(), "K") - header.begin();
    // Display names contain a space, so index from the end for numeric columns.
    CHECK(row[row.size() - (header.size() - static_cast<std::size_t>(k))] == "58");

    const auto missing = run({"metrics", "--summary", kTable2, "--author", "nobody_x"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("nobody_x") != std::string::npos);
}

TEST_CASE("metrics from a corpus, with audit")
{
    TempDir dir;
    const auto corpus = dir.write("c.txt", kSmallCorpus);
    const auto audit = (dir.path / "audit.csv").string();
    const auto r = run({"--format", "csv", "metrics", "--corpus", corpus, "--audit", audit});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 3);  // header, A, B
    CHECK(lines[1].starts_with("A,"));
    const auto audit_lines = lines_of(test::slurp(audit));
    CHECK(audit_lines[0] == "cited_pub,rule,count");
    CHECK(audit_lines.size() == 1 + 2 * 7 + 1 * 7);  // A has P1, P2; B has P1

    const auto no_corpus = run({"metrics", "--summary", kTable2, "--audit", audit});
    CHECK(no_corpus.code == 2);
}

TEST_CASE("rank by H over the role-share table")
{
    const auto r = run({"rank", "--summary", kTable1, "--key", "h_index"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    CHECK(lines.size() == 22);
    CHECK(fields(lines[1])[0] == "1");
    CHECK(fields(lines[1])[1] == "myrzakulov_r");
}

TEST_CASE("rank with the default key puts Konarov first")
{
    const auto r = run({"rank", "--summary", kTable2});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    CHECK(fields(lines[1])[1] == "konarov_a");
    CHECK(fields(lines[2])[1] == "zhautykov_b");
}

TEST_CASE("rank usage errors")
{
    CHECK(run({"rank", "--summary", kTable2, "--key", "bogus"}).code == 2);
    CHECK(run({"rank"}).code == 2);
    CHECK(run({"rank", "--summary", kTable2, "--corpus", kTable2}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--format", "xml", "rank", "--summary", kTable2}).code == 2);
}

TEST_CASE("correlate")
{
    const auto self = run({"correlate", kTable1, "--x", "H", "--y", "H"});
    REQUIRE(self.code == 0);
    const auto row = fields(lines_of(self.out)[1]);
    CHECK(row[0] == "H");
    CHECK(row[2] == "21");
    CHECK(row[3] == "1.000000");

    const auto fa = run({"correlate", kTable1, "--x", "H", "--y", "FA"});
    REQUIRE(fa.code == 0);
    CHECK(std::stod(fields(lines_of(fa.out)[1])[3]) < 0.0);

    CHECK(run({"correlate", kTable1, "--x", "H", "--y", "K_p"}).code == 2);
    CHECK(run({"correlate", kTable1, "--x", "H", "--y", "nonsense"}).code == 2);

    TempDir dir;
    const auto clean = dir.write("clean.tsv", "author\tH\tDOC\na\t3\t5\nb\t3\t9\nc\t3\t7\n");
    const auto constant = run({"correlate", clean, "--x", "H", "--y", "DOC"});
    CHECK(constant.code == 1);
    CHECK_FALSE(constant.err.empty());
}

TEST_CASE("yearly over a corpus shaped like the national table")
{
    TempDir dir;
    const auto corpus = dir.write("y.txt", yearly_corpus_text());
    const auto r = run({"yearly", corpus});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 24);
    CHECK(fields(lines[0]) == std::vector<std::string>{"YEAR", "DOC", "CIT(DOC)", "CIT", "SelfCIT", "CIT/DOC"});
    CHECK(fields(lines[1]) == std::vector<std::string>{"2000", "242", "240", "3198", "419", "13.21"});
    CHECK(fields(lines[23])[5] == "0.79");

    const auto empty = run({"yearly", dir.write("empty.txt", "")});
    CHECK(empty.code == 0);
    CHECK(lines_of(empty.out).size() == 1);

    const auto corrupt = run({"yearly", dir.write("bad.txt", "type=pub\tpub_id=P\tyear=abc\tauthors=A\n")});
    CHECK(corrupt.code == 1);
    CHECK(corrupt.err.find("line 1:") != std::string::npos);
}

TEST_CASE("plot data output")
{
    TempDir dir;
    const auto r = run({"--format", "plotdata", "yearly", dir.write("y.txt", yearly_corpus_text())});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    CHECK(lines[0] == "series\tkind\tx\ty");
    CHECK(r.out.find("CIT/DOC\tfit\t") != std::string::npos);
}

TEST_CASE("validate")
{
    TempDir dir;
    const auto good = run({"validate", dir.write("good.txt", kSmallCorpus)});
    CHECK(good.code == 0);
    CHECK(good.out == "ok: 2 publications, 2 citations\n");

    const auto dangling = run({"validate", dir.write("d.txt", kSmallCorpus + "type=cite\tciting_pub=Z\tcited_pub=P9\n")});
    CHECK(dangling.code == 1);
    CHECK(dangling.err.find("line 5:") != std::string::npos);

    CHECK(run({"validate", (dir.path / "absent.txt").string()}).code == 2);
}

TEST_CASE("--out writes the file and --precision changes decimals")
{
    TempDir dir;
    const auto out = (dir.path / "o.txt").string();
    const auto r = run({"--out", out, "--precision", "4", "metrics", "--summary", kTable2, "--author", "konarov_a"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(test::slurp(out).find("57.8300") != std::string::npos);
    CHECK(run({"--precision", "40", "metrics", "--summary", kTable2}).code == 2);
}

TEST_CASE("config file switches rules and rejects unknown keys")
{
    TempDir dir;
    const auto corpus = dir.write("c.txt", kSmallCorpus);
    const auto strict = run({"--format", "csv", "metrics", "--corpus", corpus, "--author", "A"});
    const auto loose = run({"--config", dir.write("loose.cfg", "exclude_self_citations=false\ndedupe_per_document=false\n"
                                                               "one_per_author_per_source=false\n"),
                            "--format", "csv", "metrics", "--corpus", corpus, "--author", "A"});
    REQUIRE(strict.code == 0);
    REQUIRE(loose.code == 0);
    CHECK(strict.out != loose.out);
    CHECK(run({"--config", dir.write("bad.cfg", "colour=red\n"), "rank", "--summary", kTable2}).code == 1);
}

TEST_CASE("output is deterministic")
{
    const auto a = run({"metrics", "--summary", kTable2});
    const auto b = run({"metrics", "--summary", kTable2});
    CHECK(a.out == b.out);
    TempDir dir;
    const auto corpus = dir.write("y.txt", yearly_corpus_text());
    CHECK(run({"metrics", "--corpus", corpus, "--author", "a2000_0"}).out ==
          run({"metrics", "--corpus", corpus, "--author", "a2000_0"}).out);
}

}
