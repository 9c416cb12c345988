#include "iftt/server.hpp"

#include "iftt/rng.hpp"
#include "iftt/transcript_io.hpp"

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include <sys/socket.h>

#include <condition_variable>
#include <istream>
#include <mutex>
#include <ostream>
#include <random>
#include <set>
#include <thread>
#include <vector>

namespace iftt {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = boost::beast::websocket;
using tcp = boost::asio::ip::tcp;

std::uint64_t connection_seed(const ServeOptions& options, std::uint64_t index)
{
    if (options.base_seed)
        return derive_seed({*options.base_seed, index});
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

TranscriptSink directory_recorder(const std::filesystem::path& dir, std::uint64_t connection)
{
    auto counter = std::make_shared<int>(0);
    return [dir, connection, counter](const Transcript& t) {
        const auto name = "session-" + std::to_string(connection) + "-" + std::to_string((*counter)++) + ".json";
        write_text_file(dir / name, serialize_transcript(t));
    };
}

namespace {

template <class Emit>
void feed_lines(ProtocolSession& session, std::string_view payload, Emit&& emit)
{
    std::size_t start = 0;
    while (start <= payload.size()) {
        std::size_t end = payload.find('\n', start);
        if (end == std::string_view::npos)
            end = payload.size();
        std::string_view line = payload.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (!line.empty())
            for (const std::string& out : session.handle_line(line))
                emit(out);
        start = end + 1;
    }
}

} // namespace

void serve_stdio(std::istream& in, std::ostream& out, const ServeOptions& options)
{
    const std::uint64_t seed = options.base_seed ? *options.base_seed : connection_seed(options, 0);
    ProtocolSession session(seed, options.record_dir ? directory_recorder(*options.record_dir, 0) : TranscriptSink{});
    std::string line;
    while (std::getline(in, line)) {
        feed_lines(session, line, [&](const std::string& msg) { out << msg << '\n'; });
        out.flush();
    }
    session.close();
}

// ----------------------------------------------------------------------------

struct WebSocketServer::Impl {
    ServeOptions options;
    asio::io_context ioc;
    tcp::acceptor acceptor{ioc};
    unsigned short bound_port = 0;
    std::thread accept_thread;

    std::mutex mutex;
    struct Connection {
        std::thread thread;
        std::shared_ptr<std::atomic<bool>> done;
    };
    std::vector<Connection> connections;
    std::set<int> open_fds;
    std::atomic<bool> stopping{false};
    std::atomic<std::uint64_t> accepted{0};
    std::mutex stop_mutex;
    std::condition_variable stopped_cv;
    bool stopped = false;

    void accept_loop()
    {
        while (!stopping) {
            tcp::socket socket(ioc);
            beast::error_code ec;
            acceptor.accept(socket, ec);
            if (ec) {
                if (stopping)
                    break;
                continue;
            }
            const std::uint64_t index = accepted++;
            std::lock_guard lock(mutex);
            if (stopping) {
                socket.close(ec);
                break;
            }
            reap_finished();
            open_fds.insert(socket.native_handle());
            auto done = std::make_shared<std::atomic<bool>>(false);
            std::thread t([this, s = std::move(socket), index, done]() mutable {
                run_connection(std::move(s), index);
                *done = true;
            });
            connections.push_back({std::move(t), std::move(done)});
        }
    }

    // Caller holds `mutex`.
    void reap_finished()
    {
        std::erase_if(connections, [](Connection& c) {
            if (!*c.done)
                return false;
            c.thread.join();
            return true;
        });
    }

    void run_connection(tcp::socket socket, std::uint64_t index)
    {
        const int fd = socket.native_handle();
        {
            websocket::stream<tcp::socket> ws(std::move(socket));
            beast::error_code ec;
            ws.accept(ec);
            if (!ec) {
                ws.text(true);
                ProtocolSession session(connection_seed(options, index),
                                        options.record_dir ? directory_recorder(*options.record_dir, index)
                                                           : TranscriptSink{});
                for (;;) {
                    beast::flat_buffer buffer;
                    ws.read(buffer, ec);
                    if (ec)
                        break;
                    const std::string payload = beast::buffers_to_string(buffer.data());
                    feed_lines(session, payload, [&](const std::string& msg) {
                        if (!ec)
                            ws.write(asio::buffer(msg + "\n"), ec);
                    });
                    if (ec)
                        break;
                }
                try {
                    session.close();
                } catch (...) {
                }
            }
            std::lock_guard lock(mutex);
            open_fds.erase(fd);
        }
    }
};

WebSocketServer::WebSocketServer(ServeOptions options) : impl_(std::make_unique<Impl>())
{
    impl_->options = std::move(options);
}

WebSocketServer::~WebSocketServer() { stop(); }

void WebSocketServer::start()
{
    beast::error_code ec;
    const auto address = asio::ip::make_address(impl_->options.address, ec);
    if (ec)
        throw std::runtime_error("invalid listen address '" + impl_->options.address + "'");
    const tcp::endpoint endpoint(address, impl_->options.port);
    impl_->acceptor.open(endpoint.protocol(), ec);
    if (!ec)
        impl_->acceptor.set_option(asio::socket_base::reuse_address(true), ec);
    if (!ec)
        impl_->acceptor.bind(endpoint, ec);
    if (!ec)
        impl_->acceptor.listen(asio::socket_base::max_listen_connections, ec);
    if (ec)
        throw std::runtime_error("cannot listen on " + impl_->options.address + ":" +
                                 std::to_string(impl_->options.port) + ": " + ec.message());
    impl_->bound_port = impl_->acceptor.local_endpoint().port();
    impl_->accept_thread = std::thread([this] { impl_->accept_loop(); });
}

unsigned short WebSocketServer::port() const noexcept { return impl_->bound_port; }

std::uint64_t WebSocketServer::connections_accepted() const noexcept { return impl_->accepted; }

void WebSocketServer::stop()
{
    if (!impl_ || impl_->stopping.exchange(true))
        return;
    if (impl_->acceptor.is_open())
        ::shutdown(impl_->acceptor.native_handle(), SHUT_RDWR);
    if (impl_->accept_thread.joinable())
        impl_->accept_thread.join();
    beast::error_code ec;
    impl_->acceptor.close(ec);

    std::vector<Impl::Connection> connections;
    {
        std::lock_guard lock(impl_->mutex);
        for (int fd : impl_->open_fds)
            ::shutdown(fd, SHUT_RDWR);
        connections.swap(impl_->connections);
    }
    for (auto& c : connections)
        c.thread.join();

    std::lock_guard lock(impl_->stop_mutex);
    impl_->stopped = true;
    impl_->stopped_cv.notify_all();
}

void WebSocketServer::wait()
{
    std::unique_lock lock(impl_->stop_mutex);
    impl_->stopped_cv.wait(lock, [this] { return impl_->stopped; });
}

} // namespace iftt
