// iftt-pin -- command line front end.
//
//   iftt-pin simulate --pin 1234 --buttons 9 --seed 42 --out t.json
//   iftt-pin simulate --trials 1000 --buttons 9 --out report.json
//   iftt-pin bench --buttons-list 2,9 --strategies greedy,random --trials 1000
//   iftt-pin decode t.json [--curve]
//   iftt-pin serve --listen 127.0.0.1:8765 [--record DIR] | --stdio

#include "iftt/attacker.hpp"
#include "iftt/report_io.hpp"
#include "iftt/server.hpp"
#include "iftt/simulator.hpp"
#include "iftt/transcript_io.hpp"

#include "CLI11.hpp"

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace iftt;

constexpr int kExitOk = 0;
constexpr int kExitTrialFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAmbiguous = 3;
constexpr int kExitNoCandidate = 4;

std::optional<std::uint64_t> env_seed()
{
    const char* v = std::getenv("IFTT_SEED");
    if (!v || !*v)
        return std::nullopt;
    try {
        std::size_t used = 0;
        const auto seed = std::stoull(v, &used);
        if (used == std::string(v).size())
            return seed;
    } catch (const std::exception&) {
    }
    throw ConfigurationError(std::string("IFTT_SEED must be an unsigned integer, got '") + v + "'");
}

std::vector<Digit> parse_pin(const std::string& text)
{
    if (text.empty())
        throw ConfigurationError("--pin must not be empty");
    std::vector<Digit> pin;
    for (char ch : text) {
        if (ch < '0' || ch > '9')
            throw ConfigurationError(std::string("invalid digit '") + ch + "' in --pin");
        pin.emplace_back(ch - '0');
    }
    return pin;
}

std::string pin_string(const Pin& pin)
{
    std::string s;
    for (Digit d : pin)
        s.push_back(static_cast<char>('0' + d.value()));
    return s;
}

void emit(const std::string& out_path, const std::string& contents)
{
    if (out_path.empty() || out_path == "-")
        std::cout << contents;
    else
        write_text_file(out_path, contents);
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

// ----------------------------------------------------------------------------

struct SimulateArgs {
    std::string pin;
    int pin_length = 4;
    int buttons = 9;
    std::optional<std::uint64_t> seed;
    int trials = 1;
    std::string strategy = "greedy";
    std::string mapping;
    std::string known_mapping;
    bool reveal_digits = false;
    std::string out;
    // bench only
    std::string buttons_list;
    std::string strategies;
};

int run_single(const SimulateArgs& a, std::uint64_t seed)
{
    SimulatedUser user = make_random_user(a.buttons, a.pin.empty() ? a.pin_length : static_cast<int>(a.pin.size()), seed);
    if (!a.pin.empty())
        user.pin = parse_pin(a.pin);
    if (!a.mapping.empty()) {
        auto m = ButtonMapping::parse(a.mapping);
        if (!m || m->button_count() != a.buttons || !m->is_valid_user_mapping())
            throw ConfigurationError("--mapping must be " + std::to_string(a.buttons) +
                                     " characters of Y/G using both colors");
        user.mapping = *m;
    }

    SessionConfig config;
    config.n_buttons = a.buttons;
    config.pin_length = static_cast<int>(user.pin.size());
    config.planner.strategy = parse_planner_strategy(a.strategy);
    config.planner.rng_seed = seed;
    config.reveal_digits = a.reveal_digits;
    if (!a.known_mapping.empty()) {
        auto m = ButtonMapping::parse(a.known_mapping);
        if (!m)
            throw ConfigurationError("--known-mapping must use Y, G and '.'");
        config.known_mapping = *m;
    }
    config.validate();

    const TrialReport r = run_trial(user, config);
    emit(a.out, serialize_transcript(r.transcript));

    std::cerr << (r.success ? "ok" : "FAILED") << ": " << r.total_presses << " presses (";
    for (std::size_t i = 0; i < r.presses_per_episode.size(); ++i)
        std::cerr << (i ? "," : "") << r.presses_per_episode[i];
    std::cerr << ")\n";
    if (!r.success) {
        std::cerr << r.diagnostic << "\n";
        return kExitTrialFailed;
    }
    return kExitOk;
}

int run_sweep_command(const SimulateArgs& a, std::uint64_t seed, bool grid)
{
    SweepSpec spec;
    spec.trials = a.trials;
    spec.pin_length = a.pin_length;
    spec.seed = seed;
    std::vector<int> buttons{a.buttons};
    std::vector<PlannerStrategy> strategies{parse_planner_strategy(a.strategy)};
    if (grid && !a.buttons_list.empty()) {
        buttons.clear();
        for (const auto& b : split_list(a.buttons_list))
            buttons.push_back(std::stoi(b));
    }
    if (grid && !a.strategies.empty()) {
        strategies.clear();
        for (const auto& s : split_list(a.strategies))
            strategies.push_back(parse_planner_strategy(s));
    }
    for (int b : buttons)
        for (auto s : strategies)
            spec.grid.push_back({b, s});

    const SweepReport report = run_sweep(spec);
    emit(a.out, serialize_sweep_report(report));

    bool all_ok = true;
    for (const auto& c : report.cells) {
        std::cerr << c.cell.n_buttons << " buttons, " << to_string(c.cell.strategy) << ": success " << c.successes
                  << "/" << c.trials << ", mean presses " << c.mean_total_presses << "\n";
        all_ok = all_ok && c.successes == c.trials;
    }
    return all_ok ? kExitOk : kExitTrialFailed;
}

int run_decode(const std::string& path, bool curve)
{
    const Transcript t = read_transcript_file(path);
    if (curve) {
        std::cout << "presses,candidates\n";
        for (const auto& p : ambiguity_curve(t))
            std::cout << p.presses << "," << p.candidates << "\n";
    }

    if (t.episodes.empty()) {
        std::cout << "no episodes recorded: every PIN remains a candidate\n";
        return kExitAmbiguous;
    }
    const auto pins = decode_transcript(t);
    if (pins.empty()) {
        std::cout << "no PIN is consistent with this transcript\n";
        return kExitNoCandidate;
    }
    if (pins.size() == 1) {
        std::cout << pin_string(pins.front()) << "\n";
        return kExitOk;
    }

    std::uint64_t all = 1;
    for (std::size_t i = 0; i < t.episodes.size() && all <= 10000000000ull; ++i)
        all *= 10;
    if (pins.size() == all) {
        std::cout << "all " << pins.size() << " candidates remain\n";
        return kExitAmbiguous;
    }
    std::cout << pins.size() << " candidates remain\n";
    constexpr std::size_t kShown = 50;
    for (std::size_t i = 0; i < pins.size() && i < kShown; ++i)
        std::cout << pin_string(pins[i]) << "\n";
    if (pins.size() > kShown)
        std::cout << "...\n";
    return kExitAmbiguous;
}

WebSocketServer* g_server = nullptr;

void on_signal(int)
{
    // stop() joins threads; hand it off rather than running it in the handler.
    if (g_server)
        std::thread([] { g_server->stop(); }).detach();
}

int run_serve(const std::string& listen, bool stdio, const std::string& record_dir)
{
    ServeOptions options;
    options.base_seed = env_seed();
    if (!record_dir.empty()) {
        std::filesystem::create_directories(record_dir);
        options.record_dir = record_dir;
    }
    if (stdio) {
        serve_stdio(std::cin, std::cout, options);
        return kExitOk;
    }

    const auto colon = listen.rfind(':');
    if (colon == std::string::npos)
        throw ConfigurationError("--listen must be ADDRESS:PORT");
    options.address = listen.substr(0, colon);
    options.port = static_cast<unsigned short>(std::stoul(listen.substr(colon + 1)));

    WebSocketServer server(options);
    server.start();
    std::cerr << "listening on ws://" << options.address << ":" << server.port() << "\n";
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.wait();
    g_server = nullptr;
    return kExitOk;
}

void add_simulation_flags(CLI::App* cmd, SimulateArgs& a)
{
    cmd->add_option("--pin", a.pin, "PIN typed by the simulated user (single trial)");
    cmd->add_option("--pin-length", a.pin_length, "PIN length for random users")->check(CLI::PositiveNumber);
    cmd->add_option("--buttons", a.buttons, "number of buttons");
    cmd->add_option("--seed", a.seed, "seed (default: $IFTT_SEED, else 0)");
    cmd->add_option("--trials", a.trials, "number of trials; more than one writes a sweep report");
    cmd->add_option("--strategy", a.strategy, "planner: greedy or random");
    cmd->add_option("--out", a.out, "output file (default: stdout)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Self-calibrating PIN entry: simulator, decoder and session server"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "simulate users and write a transcript or a sweep report");
    add_simulation_flags(simulate, sim);
    simulate->add_option("--mapping", sim.mapping, "user's private button colors, e.g. YYYGGGGGG");
    simulate->add_option("--known-mapping", sim.known_mapping, "button colors shown up front, e.g. YG");
    simulate->add_flag("--reveal-digits", sim.reveal_digits, "record identified digits in the transcript");

    SimulateArgs bench_args;
    auto* bench = app.add_subcommand("bench", "sweep over button counts and strategies");
    add_simulation_flags(bench, bench_args);
    bench->add_option("--buttons-list", bench_args.buttons_list, "comma-separated button counts, e.g. 2,9");
    bench->add_option("--strategies", bench_args.strategies, "comma-separated strategies, e.g. greedy,random");

    std::string transcript_path;
    bool curve = false;
    auto* decode = app.add_subcommand("decode", "recover the PIN from an observer transcript");
    decode->add_option("transcript", transcript_path, "transcript JSON file")->required();
    decode->add_flag("--curve", curve, "print the ambiguity curve as CSV");

    std::string listen = "127.0.0.1:8765";
    std::string record_dir;
    bool stdio = false;
    auto* serve = app.add_subcommand("serve", "run interactive sessions over WebSocket or stdio");
    serve->add_option("--listen", listen, "ADDRESS:PORT for WebSocket clients");
    serve->add_flag("--stdio", stdio, "speak the protocol on stdin/stdout instead");
    serve->add_option("--record", record_dir, "directory receiving one transcript per session");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*simulate || *bench) {
            SimulateArgs& a = *simulate ? sim : bench_args;
            const std::uint64_t seed = a.seed ? *a.seed : env_seed().value_or(0);
            if (!a.pin.empty())
                parse_pin(a.pin);
            require_valid_button_count(a.buttons);
            if (a.trials < 1)
                throw ConfigurationError("--trials must be at least 1");
            if (*bench || a.trials > 1) {
                if (!a.pin.empty())
                    throw ConfigurationError("--pin only applies to a single trial");
                return run_sweep_command(a, seed, bench->parsed());
            }
            return run_single(a, seed);
        }
        if (*decode)
            return run_decode(transcript_path, curve);
        if (*serve)
            return run_serve(listen, stdio, record_dir);
    } catch (const TranscriptParseError& e) {
        std::cerr << "error: " << transcript_path << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
