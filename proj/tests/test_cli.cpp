#include <catch_amalgamated.hpp>

#include <qtv/cli.hpp>

#include <cstdlib>
#include <filesystem>

using namespace qtv;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "qtv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct CacheDir {
    std::filesystem::path path;
    explicit CacheDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() / ("qtv-cli-" + name + "-" + std::to_string(::getpid()))) {
        std::filesystem::remove_all(path);
        ::setenv("QTV_CACHE", path.c_str(), 1);
    }
    ~CacheDir() { std::filesystem::remove_all(path); }
};

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("trefoil TV is certified integral", "[cli]") {
    CacheDir cache("trefoil");
    auto r = run({"tv", "--braid", "1 1 1", "--r", "5", "--exact"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["records"].size() == 1);
    CHECK(j["records"][0]["is_integer"] == true);
    CHECK(j["records"][0]["rational"] == "2");
    CHECK(j["records"][0]["tv"] == "2");
    CHECK(j["link"]["key"] == "B2:1 1 1");
}

TEST_CASE("exit codes", "[cli]") {
    CacheDir cache("codes");
    CHECK(run({"tv", "--braid", "1 1 1", "--r", "4"}).code == 2);
    CHECK(run({"tv", "--braid", "1 1 1", "--r", "3"}).code == 2);
    CHECK(run({"tv", "--braid", "1 1 1", "--r", "7..5"}).code == 2);
    CHECK(run({"tv", "--braid", "1 x", "--r", "5"}).code == 2);
    CHECK(run({"tv", "--link", "nosuch", "--r", "5"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"tv", "--r", "5"}).code == 2);
    CHECK(run({"growth", "--link", "borromean", "--rmin", "33", "--rmax", "33"}).code == 3);
    CHECK(run({"--budget-colorings", "5", "tv", "--link", "borromean", "--r", "7"}).code == 3);
    CHECK(run({"--budget-cable", "4", "jones", "--link", "borromean", "--color", "2,2,2", "--r", "7"}).code == 3);
    CHECK(run({"certify", "--link", "unknot", "--r", "5"}).code == 4);
    CHECK(run({"growth", "--link", "borromean", "--rmax", "9", "--fast-path", "habiro"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("growth with the Habiro fast path emits CSV", "[cli]") {
    CacheDir cache("growth");
    auto r = run({"growth", "--link", "4_1", "--rmax", "301", "--fast-path", "habiro", "--volume", "2.02988"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("r,tv,y,gap\n", 0) == 0);
    CHECK(count_lines(r.out) == 1 + 149);
    auto json = run({"--format", "json", "growth", "--link", "4_1", "--rmin", "5", "--rmax", "9"});
    REQUIRE(json.code == 0);
    auto j = nlohmann::json::parse(json.out);
    CHECK(j["series"]["samples"].size() == 3);
    auto table = run({"--format", "table", "growth", "--link", "4_1", "--rmax", "9"});
    CHECK(table.code == 0);
    CHECK(count_lines(table.out) == 4);
}

TEST_CASE("reports are deterministic and survive a warm cache", "[cli]") {
    CacheDir cache("determinism");
    std::vector<std::string> args = {"tv", "--link", "borromean", "--r", "5,7", "--exact"};
    auto cold = run(args);
    REQUIRE(cold.code == 0);
    REQUIRE(std::filesystem::exists(cache.path));
    auto warm = run(args);
    CHECK(warm.out == cold.out);
    auto off = args;
    off.insert(off.begin(), "--no-cache");
    CHECK(run(off).out == cold.out);
    auto jobs = args;
    jobs.insert(jobs.begin(), {"--jobs", "3"});
    CHECK(run(jobs).out == cold.out);
}

TEST_CASE("json round trip and canonical braid text", "[cli]") {
    CacheDir cache("roundtrip");
    for (std::vector<std::string> args : std::vector<std::vector<std::string>>{
             {"homogenize", "--braid", "1 1 2 1 1", "--targets", "1,0"},
             {"family", "--n", "3", "--m", "2"},
             {"torus", "--p", "3", "--q", "3"},
             {"detect-twist", "--link", "L_4_2"},
             {"integrality", "--p", "2", "--q", "5", "--r", "7,11"},
             {"jones", "--braid", "1 1", "--color", "1,2", "--r", "7", "--exact"},
             {"certify", "--link", "4_1", "--r", "19"},
             {"amu-pipeline", "--braid", "1 1 2 1 1", "--r", "5"}}) {
        INFO(args[0]);
        auto r = run(args);
        REQUIRE(r.code == 0);
        auto j = nlohmann::ordered_json::parse(r.out);
        CHECK(j.dump(2) + "\n" == r.out);
        if (j.contains("link")) {
            auto text = j["link"]["braid"].get<std::string>();
            auto b = BraidWord::parse(text, j["link"]["strands"].get<int>());
            CHECK(b.word_text() == text);
            CHECK(b.canonical() == j["link"]["key"].get<std::string>());
        }
    }
}

TEST_CASE("subcommand payloads", "[cli]") {
    CacheDir cache("payloads");
    auto h = nlohmann::json::parse(run({"homogenize", "--braid", "1 1 2 1 1", "--targets", "1,0"}).out);
    CHECK(h["result"]["homogeneous"] == true);
    CHECK(h["result"]["linking_vector"] == nlohmann::json::array({1, 0}));
    CHECK(h["result"]["gcd_condition"] == true);

    auto f = nlohmann::json::parse(run({"family", "--n", "3", "--m", "2"}).out);
    CHECK(f["link"]["crossings"] == 18);
    CHECK(f["genus_check"]["computed_genus"] == "6");
    CHECK(f["genus_check"]["printed_genus"] == "4");
    CHECK(f["genus_check"]["consistent"] == false);
    auto f2 = nlohmann::json::parse(run({"family", "--n", "2", "--m", "3"}).out);
    CHECK_FALSE(f2.contains("genus_check"));
    CHECK(f2["fiber"]["genus"] == "5");

    auto t = nlohmann::json::parse(run({"detect-twist", "--link", "L_4_2"}).out);
    CHECK_FALSE(t["sites"].empty());
    auto none = nlohmann::json::parse(run({"detect-twist", "--braid", "1 1 1"}).out);
    CHECK(none["sites"].empty());

    auto c = nlohmann::json::parse(run({"certify", "--link", "4_1", "--r", "19"}).out);
    CHECK(c["records"][0]["certificate"]["replayed"] == true);

    auto in = nlohmann::json::parse(run({"integrality", "--p", "3", "--q", "4", "--r", "5,7"}).out);
    for (const auto& rec : in["records"]) CHECK(rec["is_integer"] == true);

    auto jn = nlohmann::json::parse(run({"jones", "--link", "unknot", "--color", "2", "--r", "7", "--normalized"}).out);
    CHECK(jn["records"][0]["value"]["re"] == "1");

    auto csv = run({"--format", "csv", "tv", "--link", "4_1", "--r", "5..9"});
    CHECK(csv.out.rfind("r,tv,y\n", 0) == 0);
    CHECK(count_lines(csv.out) == 4);
}
