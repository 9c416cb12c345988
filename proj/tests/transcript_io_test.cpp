#include "iftt/attacker.hpp"
#include "iftt/report_io.hpp"
#include "iftt/simulator.hpp"
#include "iftt/transcript_io.hpp"

#include "doctest.h"

#include <filesystem>

using namespace iftt;

namespace {

std::string error_of(std::string_view text)
{
    try {
        parse_transcript(text);
    } catch (const TranscriptParseError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("round trip is lossless on simulated transcripts")
{
    SweepSpec spec;
    spec.grid = {{2, PlannerStrategy::GreedyDiscrimination}, {9, PlannerStrategy::RandomBalanced}};
    spec.trials = 300;
    spec.seed = 17;
    std::vector<TrialReport> trials;
    run_sweep(spec, &trials);
    for (const auto& r : trials) {
        const std::string text = serialize_transcript(r.transcript);
        const Transcript back = parse_transcript(text);
        CHECK(back == r.transcript);
        CHECK(serialize_transcript(back) == text);
    }
}

TEST_CASE("round trip keeps revealed digits")
{
    Transcript t;
    t.n_buttons = 3;
    t.episodes.resize(2);
    t.episodes[0].presses.push_back({*Coloring::parse("YYYYYGGGGG"), ButtonId{2}});
    t.episodes[0].identified_digit = Digit(4);
    CHECK(parse_transcript(serialize_transcript(t)) == t);
}

TEST_CASE("document layout")
{
    Transcript t;
    t.n_buttons = 2;
    t.episodes.resize(1);
    t.episodes[0].presses.push_back({*Coloring::parse("YGYGYGYGYG"), ButtonId{1}});
    const auto doc = transcript_to_json(t);
    CHECK(doc["version"] == 1);
    CHECK(doc["nButtons"] == 2);
    CHECK(doc["episodes"][0]["presses"][0]["coloring"] == "YGYGYGYGYG");
    CHECK(doc["episodes"][0]["presses"][0]["button"] == 1);
    CHECK(doc["episodes"][0]["identifiedDigit"].is_null());
}

TEST_CASE("syntax errors report line and column")
{
    const std::string err = error_of("{\n  \"version\": 1,\n  \"nButtons\": ,\n}");
    CHECK(err.rfind("line 3, column 15", 0) == 0);
}

TEST_CASE("schema errors report a JSON pointer")
{
    CHECK(error_of(R"({"version":1,"nButtons":9})").rfind("/episodes:", 0) == 0);
    CHECK(error_of(R"({"version":2,"nButtons":9,"episodes":[]})").rfind("/version:", 0) == 0);
    CHECK(error_of(R"({"version":1,"nButtons":1,"episodes":[]})").rfind("/nButtons:", 0) == 0);
    CHECK(error_of(R"({"version":1,"nButtons":9,"episodes":[{"presses":[{"coloring":"YYYYYGGGGG","button":9}]}]})")
              .rfind("/episodes/0/presses/0/button:", 0) == 0);
    CHECK(error_of(R"({"version":1,"nButtons":9,"episodes":[{"presses":[{"coloring":"YYYYYGGGG","button":1}]}]})")
              .rfind("/episodes/0/presses/0/coloring:", 0) == 0);
    CHECK(error_of(R"({"version":1,"nButtons":9,"episodes":[{"presses":[],"identifiedDigit":12}]})")
              .rfind("/episodes/0/identifiedDigit:", 0) == 0);
    CHECK(error_of(R"([1,2])").rfind("/:", 0) == 0);
}

TEST_CASE("schema errors carry episode and press indices")
{
    try {
        parse_transcript(
            R"({"version":1,"nButtons":2,"episodes":[{"presses":[]},{"presses":[{"coloring":"YYYYYGGGGG","button":0},{"coloring":"YYYYYGGGGG","button":"x"}]}]})");
        FAIL("expected an error");
    } catch (const TranscriptParseError& e) {
        CHECK(e.location() == "/episodes/1/presses/1/button");
        CHECK(e.episode() == 1u);
        CHECK(e.press() == 1u);
    }
}

TEST_CASE("redacted colorings are refused")
{
    for (const char* coloring : {R"("??????????")", "null", R"("YYYYY?GGGG")"}) {
        const std::string text = std::string(R"({"version":1,"nButtons":9,"episodes":[{"presses":[{"coloring":)") +
                                 coloring + R"(,"button":3}]}]})";
        CHECK_THROWS_AS(parse_transcript(text), RedactedTranscriptError);
    }
}

TEST_CASE("files: write then read")
{
    const auto dir = std::filesystem::temp_directory_path() / "iftt_transcript_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "t.json";
    const auto user = make_random_user(9, 4, 8);
    SessionConfig cfg;
    const auto r = run_trial(user, cfg);
    write_text_file(path, serialize_transcript(r.transcript));
    CHECK(read_transcript_file(path) == r.transcript);
    CHECK(decode_transcript(read_transcript_file(path)).front() == user.pin);
    CHECK_THROWS_AS(read_transcript_file(dir / "missing.json"), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("sweep reports are stable bytes with the documented keys")
{
    SweepSpec spec;
    spec.grid = {{9, PlannerStrategy::GreedyDiscrimination}};
    spec.trials = 20;
    spec.seed = 4;
    const std::string a = serialize_sweep_report(run_sweep(spec));
    const std::string b = serialize_sweep_report(run_sweep(spec));
    CHECK(a == b);
    const auto doc = nlohmann::json::parse(a);
    CHECK(doc["seed"] == 4);
    CHECK(doc["trials"] == 20);
    const auto& cell = doc["cells"][0];
    CHECK(cell["nButtons"] == 9);
    CHECK(cell["strategy"] == "greedy");
    CHECK(cell["successRate"] == 1.0);
    CHECK(cell["episodes"].size() == 4);
    CHECK(cell["episodes"][0].contains("medianPresses"));
}
