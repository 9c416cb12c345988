// server.hpp -- transports for the wire protocol: WebSocket (one text frame
// per message, one session per connection) and stdin/stdout lines.

#pragma once

#include "iftt/wire_protocol.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

namespace iftt {

struct ServeOptions {
    std::string address = "127.0.0.1";
    unsigned short port = 8765;
    /// Fixed base seed (e.g. from IFTT_SEED); each connection derives its
    /// own seed from it. Unset: a fresh random seed per connection.
    std::optional<std::uint64_t> base_seed;
    /// Directory receiving one transcript file per session.
    std::optional<std::filesystem::path> record_dir;
};

/// Seed for connection number `index` (0-based).
std::uint64_t connection_seed(const ServeOptions& options, std::uint64_t index);

/// Transcript sink writing session-<connection>-<n>.json files into `dir`.
TranscriptSink directory_recorder(const std::filesystem::path& dir, std::uint64_t connection);

/// Runs one session over newline-delimited text until EOF.
void serve_stdio(std::istream& in, std::ostream& out, const ServeOptions& options);

class WebSocketServer {
public:
    explicit WebSocketServer(ServeOptions options);
    ~WebSocketServer();

    WebSocketServer(const WebSocketServer&) = delete;
    WebSocketServer& operator=(const WebSocketServer&) = delete;

    /// Binds and starts accepting in a background thread. Throws
    /// std::runtime_error if the address cannot be bound.
    void start();
    /// Actual port (useful when options.port was 0).
    unsigned short port() const noexcept;
    /// Closes the listener and every open connection, then joins.
    void stop();
    /// Blocks until stop() is called from elsewhere.
    void wait();

    std::uint64_t connections_accepted() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace iftt
