#include "iftt/simulator.hpp"

#include "iftt/rng.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace iftt {

void SimulatedUser::validate() const
{
    if (pin.empty())
        throw ConfigurationError("simulated user needs a non-empty PIN");
    if (!mapping.is_valid_user_mapping())
        throw ConfigurationError("simulated user mapping '" + mapping.to_string() +
                                 "' must be complete with at least one button of each color");
}

SimulatedUser make_random_user(int n_buttons, int pin_length, std::uint64_t seed)
{
    require_valid_button_count(n_buttons);
    if (pin_length < 1)
        throw ConfigurationError("PIN length must be at least 1");
    Rng rng(derive_seed({seed, 0x75736572}));

    SimulatedUser user;
    for (int i = 0; i < pin_length; ++i)
        user.pin.emplace_back(static_cast<int>(uniform_below(rng, kDigitCount)));

    // Uniform over valid mappings by rejecting the two monochrome ones.
    ButtonMapping m(n_buttons);
    do {
        for (int b = 0; b < n_buttons; ++b)
            m.set(ButtonId{b}, (rng() & 1u) ? Color::Grey : Color::Yellow);
    } while (!m.is_valid_user_mapping());
    user.mapping = std::move(m);
    user.rng_seed = rng();
    return user;
}

ButtonId choose_press(const SimulatedUser& user, int digit_index, int round, const Coloring& coloring)
{
    const Color wanted = coloring[user.pin.at(static_cast<std::size_t>(digit_index))];
    std::vector<int> matching;
    for (int b = 0; b < user.mapping.button_count(); ++b)
        if (user.mapping.at(ButtonId{b}) == wanted)
            matching.push_back(b);
    if (matching.empty())
        throw ConfigurationError("simulated user has no " + std::string(1, to_char(wanted)) + " button");

    Rng rng(derive_seed({user.rng_seed, static_cast<std::uint64_t>(digit_index), static_cast<std::uint64_t>(round),
                         coloring.yellow_mask()}));
    return ButtonId{matching[uniform_below(rng, matching.size())]};
}

TrialReport run_trial(const SimulatedUser& user, const SessionConfig& config)
{
    user.validate();
    if (user.mapping.button_count() != config.n_buttons)
        throw ConfigurationError("user mapping has " + std::to_string(user.mapping.button_count()) +
                                 " buttons, session has " + std::to_string(config.n_buttons));
    if (static_cast<int>(user.pin.size()) != config.pin_length)
        throw ConfigurationError("user PIN length does not match session PIN length");

    TrialReport report;
    report.pressed_in_first.assign(static_cast<std::size_t>(config.n_buttons), false);

    try {
        SessionState s = start_session(config);
        int round = 0;
        for (;;) {
            const auto episode = s.entered_digits().size();
            switch (s.phase()) {
            case SessionPhase::AwaitingPress: {
                const ButtonId b = choose_press(user, static_cast<int>(episode), round, s.current_coloring());
                s = submit_press(s, b);
                ++round;
                if (episode == 0)
                    report.pressed_in_first[static_cast<std::size_t>(b.index)] = true;
                // After an identification the episode state is the one that
                // just finished, so this check covers the final press too.
                if (!s.current_episode().consistent_digits().contains(user.pin[episode]))
                    report.true_digit_always_consistent = false;
                break;
            }
            case SessionPhase::DigitIdentified:
                report.presses_per_episode.push_back(round);
                round = 0;
                if (s.entered_digits().size() == 1)
                    report.learned_after_first = s.learned_mapping();
                s = advance(s);
                break;
            case SessionPhase::Complete:
                report.presses_per_episode.push_back(round);
                if (s.entered_digits().size() == 1)
                    report.learned_after_first = s.learned_mapping();
                report.recovered_pin = s.entered_digits();
                report.success = report.recovered_pin == user.pin;
                if (!report.success)
                    report.diagnostic = "recovered PIN differs from the user's PIN";
                report.transcript = s.transcript();
                report.total_presses = static_cast<int>(report.transcript.total_presses());
                return report;
            case SessionPhase::Failed:
                report.presses_per_episode.push_back(round);
                report.recovered_pin = s.entered_digits();
                report.failure = s.failure();
                report.diagnostic = "session failed: " + to_string(s.failure()) + " at digit " +
                                    std::to_string(episode) + " after " + std::to_string(round) + " presses";
                report.transcript = s.transcript();
                report.total_presses = static_cast<int>(report.transcript.total_presses());
                return report;
            }
        }
    } catch (const std::exception& e) {
        report.success = false;
        report.diagnostic = e.what();
        return report;
    }
}

// ----------------------------------------------------------------------------

SimulatedUser trial_user(const SweepSpec& spec, const SweepCell& cell, int index)
{
    return make_random_user(cell.n_buttons, spec.pin_length,
                            derive_seed({spec.seed, static_cast<std::uint64_t>(cell.n_buttons),
                                         static_cast<std::uint64_t>(index)}));
}

SessionConfig trial_session_config(const SweepSpec& spec, const SweepCell& cell, int index)
{
    SessionConfig config;
    config.n_buttons = cell.n_buttons;
    config.pin_length = spec.pin_length;
    config.planner.strategy = cell.strategy;
    config.planner.rng_seed = derive_seed({spec.seed, static_cast<std::uint64_t>(cell.n_buttons),
                                           static_cast<std::uint64_t>(index), 0x706c616e});
    return config;
}

namespace {

bool transfer_matches(const TrialReport& r, const SimulatedUser& user)
{
    if (!r.learned_after_first)
        return false;
    for (int b = 0; b < user.mapping.button_count(); ++b) {
        auto learned = r.learned_after_first->at(ButtonId{b});
        if (r.pressed_in_first[static_cast<std::size_t>(b)]) {
            if (learned != user.mapping.at(ButtonId{b}))
                return false;
        } else if (learned) {
            return false;
        }
    }
    return true;
}

double median_of(std::vector<int> v)
{
    if (v.empty())
        return 0;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

} // namespace

SweepReport run_sweep(const SweepSpec& spec, std::vector<TrialReport>* trials_out)
{
    if (spec.grid.empty())
        throw ConfigurationError("sweep grid is empty");
    if (spec.trials < 1)
        throw ConfigurationError("sweep needs at least one trial");
    if (spec.pin_length < 1)
        throw ConfigurationError("PIN length must be at least 1");
    for (const auto& cell : spec.grid)
        require_valid_button_count(cell.n_buttons);

    SweepReport report;
    report.spec = spec;
    if (trials_out)
        trials_out->clear();

    unsigned n_threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());

    for (const SweepCell& cell : spec.grid) {
        const auto n = static_cast<std::size_t>(spec.trials);
        std::vector<TrialReport> results(n);
        std::vector<SimulatedUser> users(n);

        auto work = [&](std::size_t first) {
            for (std::size_t i = first; i < n; i += n_threads) {
                users[i] = trial_user(spec, cell, static_cast<int>(i));
                results[i] = run_trial(users[i], trial_session_config(spec, cell, static_cast<int>(i)));
            }
        };
        if (n_threads == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < n_threads; ++t)
                pool.emplace_back(work, t);
        }

        CellReport cr;
        cr.cell = cell;
        cr.trials = spec.trials;
        std::vector<std::vector<int>> by_episode(static_cast<std::size_t>(spec.pin_length));
        long long total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const TrialReport& r = results[i];
            cr.successes += r.success ? 1 : 0;
            cr.non_convergence += r.failure == FailureReason::NonConvergence ? 1 : 0;
            cr.soundness_violations += r.true_digit_always_consistent ? 0 : 1;
            cr.transfer_mismatches += transfer_matches(r, users[i]) ? 0 : 1;
            total += r.total_presses;
            for (std::size_t e = 0; e < r.presses_per_episode.size() && e < by_episode.size(); ++e) {
                by_episode[e].push_back(r.presses_per_episode[e]);
                cr.max_episode_presses = std::max(cr.max_episode_presses, r.presses_per_episode[e]);
            }
        }
        cr.success_rate = static_cast<double>(cr.successes) / static_cast<double>(cr.trials);
        cr.mean_total_presses = static_cast<double>(total) / static_cast<double>(cr.trials);
        for (std::size_t e = 0; e < by_episode.size(); ++e) {
            EpisodeStats es;
            es.episode = static_cast<int>(e);
            const auto& v = by_episode[e];
            if (!v.empty()) {
                long long sum = 0;
                for (int x : v)
                    sum += x;
                es.mean = static_cast<double>(sum) / static_cast<double>(v.size());
                es.median = median_of(v);
                es.max = *std::max_element(v.begin(), v.end());
            }
            cr.per_episode.push_back(es);
        }
        report.cells.push_back(std::move(cr));

        if (trials_out)
            for (auto& r : results)
                trials_out->push_back(std::move(r));
    }
    return report;
}

} // namespace iftt
