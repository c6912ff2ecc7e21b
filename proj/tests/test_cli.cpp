#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>
#include <regex>

#include "test_support.hpp"

using namespace morphfit;
using namespace morphfit::testing;

namespace {

struct RunResult {
    int code = -1;
    std::string output;
};

// Runs the CLI with stderr folded into the captured output.
RunResult run(const std::string& args) {
    std::string command = std::string("\"") + MORPHFIT_CLI + "\" " + args + " 2>&1";
    RunResult r;
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.output.append(buffer.data(), n);
    int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string q(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

void write_random_vectors(const std::filesystem::path& path, const std::vector<std::string>& words, int dim, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::string text;
    for (const auto& w : words) {
        text += w;
        for (int k = 0; k < dim; ++k) text += " " + std::to_string(normal(rng));
        text += "\n";
    }
    write_file(path, text);
}

const std::vector<std::string> kEn12 = {"like",   "liked",    "likes",    "dislike", "dislikes", "create",
                                        "creating", "careful", "careless", "lock",   "locked",   "unlock"};

}  // namespace

TEST_CASE("extract reproduces the hand-enumerated constraint files") {
    TempDir dir;
    auto r = run("extract --lang en --min-freq 10 --vocab " + q(fixture("en12_vocab.tsv")) + " --out-attract " +
                 q(dir / "a.tsv") + " --out-repel " + q(dir / "r.tsv"));
    REQUIRE_MESSAGE(r.code == 0, r.output);
    CHECK(r.output.find("|W|=12 |A|=10 |R|=18") != std::string::npos);
    CHECK(read_file(dir / "a.tsv") == read_file(fixture("en12_attract.tsv")));
    CHECK(read_file(dir / "r.tsv") == read_file(fixture("en12_repel.tsv")));

    auto again = run("extract --lang en --threads 4 --vocab " + q(fixture("en12_vocab.tsv")) + " --out-attract " +
                     q(dir / "a2.tsv") + " --out-repel " + q(dir / "r2.tsv"));
    REQUIRE(again.code == 0);
    CHECK(read_file(dir / "a2.tsv") == read_file(dir / "a.tsv"));
    CHECK(read_file(dir / "r2.tsv") == read_file(dir / "r.tsv"));
}

TEST_CASE("extract on the Italian adjective family") {
    TempDir dir;
    auto r = run("extract --lang it --vocab " + q(fixture("it_rispettoso_vocab.txt")) + " --out-attract " +
                 q(dir / "a.tsv") + " --out-repel " + q(dir / "r.tsv"));
    REQUIRE_MESSAGE(r.code == 0, r.output);
    CHECK(r.output.find("|W|=6 |A|=12 |R|=18") != std::string::npos);
}

TEST_CASE("extract with a cut-off that removes every word") {
    TempDir dir;
    auto r = run("extract --lang en --min-freq 100000 --vocab " + q(fixture("en12_vocab.tsv")) + " --out-attract " +
                 q(dir / "a.tsv") + " --out-repel " + q(dir / "r.tsv"));
    CHECK(r.code != 0);
    CHECK(r.output.find("empty vocabulary after cutoff") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2") {
    TempDir dir;
    write_random_vectors(dir / "v.txt", kEn12, 4, 1);
    auto missing = run("fit --vectors " + q(dir / "v.txt") + " --attract " + q(dir / "nope.tsv") + " --out " +
                       q(dir / "o.txt"));
    CHECK(missing.code == 2);
    CHECK(missing.output.find("nope.tsv") != std::string::npos);
    CHECK(run("").code == 2);
    CHECK(run("fit --vectors x").code == 2);
    CHECK(run("extract --lang xx --vocab " + q(fixture("en12_vocab.tsv")) + " --out-attract " + q(dir / "a") +
              " --out-repel " + q(dir / "r"))
              .code != 0);
}

TEST_CASE("fit, fix, eval and neighbors run end to end") {
    TempDir dir;
    write_random_vectors(dir / "v.txt", kEn12, 6, 2);
    auto fit = run("fit --vectors " + q(dir / "v.txt") + " --attract " + q(fixture("en12_attract.tsv")) + " --repel " +
                   q(fixture("en12_repel.tsv")) + " --out " + q(dir / "fit.txt") + " --epochs 3 --batch-size 4");
    REQUIRE_MESSAGE(fit.code == 0, fit.output);
    auto log = read_file(dir / "fit.txt.costs.tsv");
    CHECK(log.rfind("epoch\tattract\trepel\treg\ttotal\n", 0) == 0);
    CHECK(std::count(log.begin(), log.end(), '\n') == 4);

    auto fit2 = run("fit --vectors " + q(dir / "v.txt") + " --attract " + q(fixture("en12_attract.tsv")) + " --repel " +
                    q(fixture("en12_repel.tsv")) + " --out " + q(dir / "fit2.txt") + " --epochs 3 --batch-size 4");
    REQUIRE(fit2.code == 0);
    CHECK(read_file(dir / "fit.txt") == read_file(dir / "fit2.txt"));

    write_file(dir / "freq.tsv", read_file(fixture("en12_vocab.tsv")));
    auto fix = run("fix --vectors " + q(dir / "v.txt") + " --attract " + q(fixture("en12_attract.tsv")) + " --freq " +
                   q(dir / "freq.tsv") + " --out " + q(dir / "fix.txt"));
    REQUIRE_MESSAGE(fix.code == 0, fix.output);

    write_file(dir / "sim.tsv", "like\tlikes\t9\nlike\tdislike\t1\ncareful\tcareless\t0.5\nlock\tlocked\t8\nfoo\tbar\t3\n");
    auto eval = run("eval --vectors " + q(dir / "fit.txt") + " --dataset " + q(dir / "sim.tsv"));
    REQUIRE_MESSAGE(eval.code == 0, eval.output);
    CHECK(std::regex_search(eval.output, std::regex(R"(rho=-?[0-9]+\.[0-9]{6} covered=4 total=5)")));

    auto nn = run("neighbors --vectors " + q(dir / "fit.txt") + " --word like -k 3");
    REQUIRE_MESSAGE(nn.code == 0, nn.output);
    CHECK(std::count(nn.output.begin(), nn.output.end(), '\n') == 3);
}

TEST_CASE("subcommand options from a config file") {
    TempDir dir;
    write_file(dir / "extract.ini", "[extract]\nlang = \"en\"\nvocab = \"" + fixture("en12_vocab.tsv").string() +
                                        "\"\nout-attract = \"" + (dir / "a.tsv").string() + "\"\nout-repel = \"" +
                                        (dir / "r.tsv").string() + "\"\nmin-freq = 10\n");
    auto r = run("extract --config " + q(dir / "extract.ini"));
    REQUIRE_MESSAGE(r.code == 0, r.output);
    CHECK(read_file(dir / "a.tsv") == read_file(fixture("en12_attract.tsv")));
}
