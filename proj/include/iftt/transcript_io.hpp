// transcript_io.hpp -- the transcript file format.
//
//   {
//     "version": 1,
//     "nButtons": 9,
//     "episodes": [
//       { "presses": [ { "coloring": "YYGGYGYGGY", "button": 3 }, ... ],
//         "identifiedDigit": 4 }            // or null
//     ]
//   }

#pragma once

#include "iftt/core_model.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace iftt {

inline constexpr int kTranscriptVersion = 1;

/// Syntax or schema error. what() starts with the location: "line L, column
/// C" for syntax errors, a JSON pointer such as "/episodes/1/presses/0/button"
/// for schema errors.
class TranscriptParseError : public FormatError {
public:
    TranscriptParseError(const std::string& location, const std::string& message,
                         std::optional<std::size_t> episode = std::nullopt,
                         std::optional<std::size_t> press = std::nullopt)
      : FormatError(location + ": " + message, episode, press), location_(location)
    {
    }

    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

/// The transcript has its colorings withheld ("??????????" or null). Nothing
/// can be decoded from button presses alone.
class RedactedTranscriptError : public TranscriptParseError {
public:
    using TranscriptParseError::TranscriptParseError;
};

nlohmann::json transcript_to_json(const Transcript& transcript);
Transcript transcript_from_json(const nlohmann::json& doc);

/// Pretty-printed, newline-terminated. Identical transcripts give identical
/// bytes.
std::string serialize_transcript(const Transcript& transcript);
Transcript parse_transcript(std::string_view text);

Transcript read_transcript_file(const std::filesystem::path& path);
/// Throws std::runtime_error if the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

} // namespace iftt
