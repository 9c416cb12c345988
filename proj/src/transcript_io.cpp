#include "iftt/transcript_io.hpp"

#include <fstream>
#include <sstream>

namespace iftt {

using nlohmann::json;

namespace {

std::string pointer(std::initializer_list<std::string> parts)
{
    std::string out;
    for (const auto& p : parts)
        out += "/" + p;
    return out;
}

// Line and column of a byte offset, both 1-based.
std::string line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& require_field(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object())
        throw TranscriptParseError(where.empty() ? "/" : where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw TranscriptParseError(where + "/" + key, "missing field");
    return *it;
}

} // namespace

json transcript_to_json(const Transcript& transcript)
{
    json episodes = json::array();
    for (const Episode& ep : transcript.episodes) {
        json presses = json::array();
        for (const PressEvent& p : ep.presses)
            presses.push_back({{"coloring", p.coloring.to_string()}, {"button", p.button.index}});
        json e;
        e["presses"] = std::move(presses);
        e["identifiedDigit"] = ep.identified_digit ? json(ep.identified_digit->value()) : json(nullptr);
        episodes.push_back(std::move(e));
    }
    json doc;
    doc["version"] = kTranscriptVersion;
    doc["nButtons"] = transcript.n_buttons;
    doc["episodes"] = std::move(episodes);
    return doc;
}

Transcript transcript_from_json(const json& doc)
{
    const json& version = require_field(doc, "version", "");
    if (!version.is_number_integer())
        throw TranscriptParseError("/version", "expected an integer");
    if (version.get<int>() != kTranscriptVersion)
        throw TranscriptParseError("/version", "unsupported version " + version.dump());

    Transcript t;
    const json& n = require_field(doc, "nButtons", "");
    if (!n.is_number_integer() || n.get<long long>() < 2 || n.get<long long>() > 1000)
        throw TranscriptParseError("/nButtons", "expected an integer between 2 and 1000");
    t.n_buttons = n.get<int>();

    const json& episodes = require_field(doc, "episodes", "");
    if (!episodes.is_array())
        throw TranscriptParseError("/episodes", "expected an array");

    for (std::size_t e = 0; e < episodes.size(); ++e) {
        const std::string ep_where = pointer({"episodes", std::to_string(e)});
        const json& presses = require_field(episodes[e], "presses", ep_where);
        if (!presses.is_array())
            throw TranscriptParseError(ep_where + "/presses", "expected an array", e);

        Episode episode;
        for (std::size_t i = 0; i < presses.size(); ++i) {
            const std::string where = ep_where + "/presses/" + std::to_string(i);
            const json& coloring = require_field(presses[i], "coloring", where);
            if (coloring.is_null() ||
                (coloring.is_string() && coloring.get<std::string>().find('?') != std::string::npos))
                throw RedactedTranscriptError(where + "/coloring",
                                              "coloring is redacted; presses cannot be interpreted without it", e,
                                              i);
            if (!coloring.is_string())
                throw TranscriptParseError(where + "/coloring", "expected a string", e, i);
            auto parsed = Coloring::parse(coloring.get<std::string>());
            if (!parsed)
                throw TranscriptParseError(where + "/coloring",
                                           "expected 10 characters of Y/G, got \"" + coloring.get<std::string>() +
                                               "\"",
                                           e, i);

            const json& button = require_field(presses[i], "button", where);
            if (!button.is_number_integer())
                throw TranscriptParseError(where + "/button", "expected an integer", e, i);
            const long long b = button.get<long long>();
            if (b < 0 || b >= t.n_buttons)
                throw TranscriptParseError(where + "/button",
                                           "button " + std::to_string(b) + " out of range for " +
                                               std::to_string(t.n_buttons) + " buttons",
                                           e, i);
            episode.presses.push_back({*parsed, ButtonId{static_cast<int>(b)}});
        }

        if (auto it = episodes[e].find("identifiedDigit"); it != episodes[e].end() && !it->is_null()) {
            if (!it->is_number_integer() || it->get<long long>() < 0 || it->get<long long>() > 9)
                throw TranscriptParseError(ep_where + "/identifiedDigit", "expected a digit 0-9 or null", e);
            episode.identified_digit = Digit(it->get<int>());
        }
        t.episodes.push_back(std::move(episode));
    }
    return t;
}

std::string serialize_transcript(const Transcript& transcript)
{
    return transcript_to_json(transcript).dump(2) + "\n";
}

Transcript parse_transcript(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw TranscriptParseError(line_column(text, e.byte > 0 ? e.byte - 1 : 0), "invalid JSON");
    }
    return transcript_from_json(doc);
}

Transcript read_transcript_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_transcript(buf.str());
}

void write_text_file(const std::filesystem::path& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << contents;
    out.flush();
    if (!out)
        throw std::runtime_error("error while writing " + path.string());
}

} // namespace iftt
