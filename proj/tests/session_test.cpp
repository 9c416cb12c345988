#include "iftt/session.hpp"
#include "iftt/simulator.hpp"

#include "doctest.h"
#include "oracles.hpp"

using namespace iftt;

namespace {

// Press a button of the color the given digit currently has under `mapping`.
SessionState press_as(const SessionState& s, Digit digit, const ButtonMapping& mapping, Rng& rng)
{
    const Color want = s.current_coloring()[digit];
    std::vector<int> pool;
    for (int b = 0; b < mapping.button_count(); ++b)
        if (mapping.at(ButtonId{b}) == want)
            pool.push_back(b);
    return submit_press(s, ButtonId{pool[uniform_below(rng, pool.size())]});
}

} // namespace

TEST_CASE("start_session: defaults")
{
    const auto s = start_session({});
    CHECK(s.phase() == SessionPhase::AwaitingPress);
    CHECK(s.current_episode().consistent_digits().size() == 10);
    CHECK(s.learned_mapping().button_count() == 9);
    CHECK(s.learned_mapping().known_count() == 0);
    CHECK(coloring_is_balanced(s.current_coloring()));
    CHECK(s.transcript().episodes.size() == 1);
}

TEST_CASE("start_session: two known buttons seed the episode")
{
    SessionConfig cfg;
    cfg.n_buttons = 2;
    cfg.known_mapping = *ButtonMapping::parse("YG");
    const auto s = start_session(cfg);
    for (int d = 0; d < 10; ++d) {
        CHECK(s.current_episode().history().at(Digit(d), ButtonId{0}).single() == Color::Yellow);
        CHECK(s.current_episode().history().at(Digit(d), ButtonId{1}).single() == Color::Grey);
    }
    CHECK(s.current_episode().consistent_digits().size() == 10);
}

TEST_CASE("start_session: invalid configurations")
{
    SessionConfig cfg;
    cfg.pin_length = 0;
    CHECK_THROWS_AS(start_session(cfg), ConfigurationError);
    cfg = {};
    cfg.n_buttons = 1;
    CHECK_THROWS_AS(start_session(cfg), ConfigurationError);
    cfg = {};
    cfg.known_mapping = *ButtonMapping::parse("YG");
    CHECK_THROWS_AS(start_session(cfg), ConfigurationError);
}

TEST_CASE("pinLength 1 completes after one digit")
{
    SessionConfig cfg;
    cfg.pin_length = 1;
    const auto m = *ButtonMapping::parse("YYGGYGGYG");
    Rng rng(1);
    auto s = start_session(cfg);
    while (s.phase() == SessionPhase::AwaitingPress)
        s = press_as(s, Digit(6), m, rng);
    CHECK(s.phase() == SessionPhase::Complete);
    CHECK(s.entered_digits() == std::vector<Digit>{Digit(6)});
    CHECK_THROWS_AS(submit_press(s, ButtonId{0}), StateMachineError);
    CHECK_THROWS_AS(advance(s), StateMachineError);
}

TEST_CASE("submit_press: 4-digit PIN, consistent user")
{
    const std::vector<Digit> pin{Digit(1), Digit(2), Digit(3), Digit(4)};
    const auto m = *ButtonMapping::parse("GYYGGYGYG");
    Rng rng(2);
    auto s = start_session({});
    std::size_t i = 0;
    while (s.phase() != SessionPhase::Complete) {
        REQUIRE(s.phase() != SessionPhase::Failed);
        if (s.phase() == SessionPhase::DigitIdentified) {
            s = advance(s);
            ++i;
        } else {
            s = press_as(s, pin[i], m, rng);
        }
    }
    CHECK(s.entered_digits() == pin);
    CHECK(s.transcript().episodes.size() == 4);
    // Digits stay hidden from the transcript unless asked for.
    for (const auto& e : s.transcript().episodes)
        CHECK_FALSE(e.identified_digit);
}

TEST_CASE("submit_press: out-of-range button")
{
    const auto s = start_session({});
    CHECK_THROWS_AS(submit_press(s, ButtonId{9}), PreconditionError);
    CHECK_THROWS_AS(submit_press(s, ButtonId{-1}), PreconditionError);
}

TEST_CASE("submit_press: known mapping narrows like set intersection")
{
    SessionConfig cfg;
    cfg.n_buttons = 2;
    cfg.known_mapping = *ButtonMapping::parse("YG");
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        cfg.planner.rng_seed = rng();
        auto s = start_session(cfg);
        std::set<int> candidates{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
        while (s.phase() == SessionPhase::AwaitingPress) {
            const Color pick = (rng() & 1u) ? Color::Grey : Color::Yellow;
            candidates = oracle::intersect_step(candidates, s.current_coloring(), pick);
            s = submit_press(s, ButtonId{pick == Color::Yellow ? 0 : 1});
            if (s.phase() == SessionPhase::AwaitingPress) {
                std::set<int> engine;
                for (Digit d : s.current_episode().consistent_digits().digits())
                    engine.insert(d.value());
                CHECK(engine == candidates);
            }
        }
        // Every survivor set is split, so any press sequence identifies.
        REQUIRE(s.phase() == SessionPhase::DigitIdentified);
        REQUIRE(candidates.size() == 1);
        CHECK(s.entered_digits().back().value() == *candidates.begin());
    }
}

TEST_CASE("submit_press: a user inconsistent with every digit fails with a diagnosis")
{
    // Random presses in a self-calibrating 2-button session quickly
    // contradict every hypothesis.
    Rng rng(9);
    int failures = 0;
    for (int trial = 0; trial < 200; ++trial) {
        SessionConfig cfg;
        cfg.n_buttons = 2;
        cfg.planner.rng_seed = rng();
        auto s = start_session(cfg);
        while (s.phase() == SessionPhase::AwaitingPress)
            s = submit_press(s, ButtonId{static_cast<int>(rng() & 1u)});
        if (s.phase() != SessionPhase::Failed)
            continue;
        ++failures;
        CHECK(s.failure() == FailureReason::UserInconsistent);
        CHECK(s.current_episode().consistent_digits().empty());
        CHECK_THROWS_AS(submit_press(s, ButtonId{0}), StateMachineError);
        CHECK_THROWS_AS(advance(s), StateMachineError);
    }
    CHECK(failures > 0);
}

TEST_CASE("snapshot: fresh session")
{
    const auto v = snapshot(start_session({}));
    for (int d = 0; d < 10; ++d) {
        CHECK(v.consistent[static_cast<std::size_t>(d)]);
        CHECK(v.dots[static_cast<std::size_t>(d)].empty());
        CHECK(v.conflicts[static_cast<std::size_t>(d)].empty());
    }
    CHECK(v.button_colors.size() == 9);
    for (const auto& c : v.button_colors)
        CHECK_FALSE(c);
    CHECK(v.digits_entered == 0);
    CHECK_FALSE(v.digits);
}

TEST_CASE("snapshot: dots follow the presses and conflicts mark both-color buttons")
{
    auto s = start_session({});
    Rng rng(3);
    std::vector<PressEvent> presses;
    for (int i = 0; i < 3 && s.phase() == SessionPhase::AwaitingPress; ++i) {
        const PressEvent p{s.current_coloring(), ButtonId{static_cast<int>(uniform_below(rng, 2)) + 3}};
        presses.push_back(p);
        s = submit_press(s, p.button);
    }
    REQUIRE(s.phase() == SessionPhase::AwaitingPress);
    const auto v = snapshot(s);
    const auto alive = oracle::consistent_by_pairs(presses);
    for (int d = 0; d < 10; ++d) {
        const auto& dots = v.dots[static_cast<std::size_t>(d)];
        REQUIRE(dots.size() == presses.size());
        for (std::size_t i = 0; i < presses.size(); ++i) {
            CHECK(dots[i].button == presses[i].button);
            CHECK(dots[i].color == presses[i].coloring[Digit(d)]);
        }
        CHECK(v.consistent[static_cast<std::size_t>(d)] == (alive.count(d) == 1));
        CHECK(v.conflicts[static_cast<std::size_t>(d)].empty() == (alive.count(d) == 1));
    }
}

TEST_CASE("snapshot: digit 7 struck out with button 3 marked")
{
    // Press button 3 until digit 7 has been shown in both colors at a press
    // of it. Some planner seeds identify another digit first; take the first
    // seed that gets there.
    std::optional<SessionState> found;
    for (std::uint64_t seed = 0; seed < 100 && !found; ++seed) {
        SessionConfig cfg;
        cfg.planner.rng_seed = seed;
        auto s = start_session(cfg);
        bool yellow_seen = false, grey_seen = false;
        while (s.phase() == SessionPhase::AwaitingPress && !(yellow_seen && grey_seen)) {
            (s.current_coloring()[Digit(7)] == Color::Yellow ? yellow_seen : grey_seen) = true;
            s = submit_press(s, ButtonId{3});
        }
        if (yellow_seen && grey_seen && s.phase() == SessionPhase::AwaitingPress)
            found = s;
    }
    REQUIRE(found);
    const auto& s = *found;
    const auto v = snapshot(s);
    CHECK_FALSE(v.consistent[7]);
    CHECK(v.conflicts[7] == std::vector<ButtonId>{ButtonId{3}});
}

TEST_CASE("snapshot: learned colors shown, or hidden in challenge mode")
{
    for (bool reveal : {true, false}) {
        SessionConfig cfg;
        cfg.reveal_learned_colors = reveal;
        cfg.reveal_digits = reveal;
        const auto m = *ButtonMapping::parse("YYYGGGGGG");
        Rng rng(4);
        auto s = start_session(cfg);
        std::vector<bool> pressed(9, false);
        while (s.phase() == SessionPhase::AwaitingPress) {
            const std::size_t before = s.transcript().episodes.back().presses.size();
            s = press_as(s, Digit(5), m, rng);
            pressed[static_cast<std::size_t>(s.transcript().episodes.back().presses[before].button.index)] = true;
        }
        REQUIRE(s.phase() == SessionPhase::DigitIdentified);
        s = advance(s);
        const auto v = snapshot(s);
        for (int b = 0; b < 9; ++b) {
            const auto& c = v.button_colors[static_cast<std::size_t>(b)];
            if (!reveal || !pressed[static_cast<std::size_t>(b)])
                CHECK_FALSE(c);
            else
                CHECK(c == m.at(ButtonId{b}));
        }
        CHECK(v.digits_entered == 1);
        CHECK(v.digits.has_value() == reveal);
        if (reveal)
            CHECK(*v.digits == std::vector<Digit>{Digit(5)});
        // The new episode starts with no dots.
        CHECK(v.dots[0].empty());
    }
}

TEST_CASE("second episode with every button learned takes at most 4 presses")
{
    Rng rng(5);
    const auto all = enumerate_valid_mappings(9);
    for (int trial = 0; trial < 200; ++trial) {
        const auto& m = all[uniform_below(rng, all.size())];
        SessionConfig cfg;
        cfg.pin_length = 2;
        cfg.known_mapping = m;
        cfg.planner.rng_seed = rng();
        auto s = start_session(cfg);
        const Digit first(static_cast<int>(uniform_below(rng, 10)));
        const Digit second(static_cast<int>(uniform_below(rng, 10)));
        while (s.phase() == SessionPhase::AwaitingPress)
            s = press_as(s, first, m, rng);
        REQUIRE(s.phase() == SessionPhase::DigitIdentified);
        s = advance(s);
        int presses = 0;
        while (s.phase() == SessionPhase::AwaitingPress) {
            s = press_as(s, second, m, rng);
            ++presses;
        }
        CHECK(s.phase() == SessionPhase::Complete);
        CHECK(presses <= 4);
        CHECK(s.entered_digits().back() == second);
    }
}

TEST_CASE("state machine: random operation sequences respect the phase rules")
{
    Rng rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        SessionConfig cfg;
        cfg.n_buttons = 2 + static_cast<int>(uniform_below(rng, 5));
        cfg.pin_length = 1 + static_cast<int>(uniform_below(rng, 3));
        cfg.planner.rng_seed = rng();
        auto s = start_session(cfg);
        for (int step = 0; step < 400; ++step) {
            const auto op = uniform_below(rng, 4);
            const SessionPhase before = s.phase();
            if (op < 3) {
                const int b = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(cfg.n_buttons) + 1));
                if (before != SessionPhase::AwaitingPress) {
                    CHECK_THROWS_AS(submit_press(s, ButtonId{b}), StateMachineError);
                } else if (b == cfg.n_buttons) {
                    CHECK_THROWS_AS(submit_press(s, ButtonId{b}), PreconditionError);
                } else {
                    const auto presses = s.transcript().total_presses();
                    s = submit_press(s, ButtonId{b});
                    CHECK(s.transcript().total_presses() == presses + 1);
                }
            } else if (before == SessionPhase::DigitIdentified) {
                s = advance(s);
                CHECK(s.phase() == SessionPhase::AwaitingPress);
            } else {
                CHECK_THROWS_AS(advance(s), StateMachineError);
            }
            CHECK(static_cast<int>(s.entered_digits().size()) <= cfg.pin_length);
            if (s.phase() == SessionPhase::Complete)
                CHECK(static_cast<int>(s.entered_digits().size()) == cfg.pin_length);
            if (s.phase() == SessionPhase::Failed)
                CHECK(s.failure() != FailureReason::None);
            if (s.phase() == SessionPhase::AwaitingPress)
                CHECK(coloring_is_balanced(s.current_coloring()));
        }
    }
}

TEST_CASE("press cap turns a stalled episode into a non-convergence failure")
{
    // A user alternating two buttons regardless of the coloring ends up
    // either inconsistent, identified, or stalled; never beyond the cap.
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        SessionConfig cfg;
        cfg.pin_length = 1;
        cfg.planner.rng_seed = rng();
        auto s = start_session(cfg);
        int presses = 0;
        while (s.phase() == SessionPhase::AwaitingPress) {
            s = submit_press(s, ButtonId{static_cast<int>(uniform_below(rng, 9))});
            ++presses;
        }
        CHECK(presses <= kMaxPressesPerEpisode);
        if (presses == kMaxPressesPerEpisode && s.phase() == SessionPhase::Failed)
            CHECK(s.failure() == FailureReason::NonConvergence);
    }
}

TEST_CASE("identical configs and presses give identical sessions")
{
    SessionConfig cfg;
    cfg.planner.rng_seed = 99;
    const auto user = make_random_user(9, 4, 99);
    const auto a = run_trial(user, cfg);
    const auto b = run_trial(user, cfg);
    CHECK(a.transcript == b.transcript);
    CHECK(a.success);
}
