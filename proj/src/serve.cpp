#include "liftmesh/serve.hpp"

#include "liftmesh/error.hpp"

#include <httplib.h>

#include <fstream>
#include <sstream>

namespace liftmesh {

namespace {

std::optional<std::string> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

std::string default_index_html() {
    return R"(<!DOCTYPE html>
<html lang="en">
<head><meta charset="utf-8"><title>liftmesh explorer</title></head>
<body>
<h1>liftmesh explorer</h1>
<p>The visualization bundle is available at <a href="/bundle.json">/bundle.json</a>.
Start the server with <code>--assets</code> pointing at a built explorer UI to get the linked views.</p>
</body>
</html>
)";
}

struct BundleServer::Impl {
    httplib::Server server;
};

BundleServer::BundleServer(std::filesystem::path bundle, std::optional<std::filesystem::path> assets_dir)
    : impl_(std::make_unique<Impl>()) {
    if (!std::filesystem::is_regular_file(bundle)) {
        throw Error(ErrorCode::Io, "bundle '" + bundle.string() + "' does not exist");
    }
    if (assets_dir && !std::filesystem::is_directory(*assets_dir)) {
        throw Error(ErrorCode::Io, "assets directory '" + assets_dir->string() + "' does not exist");
    }
    auto& svr = impl_->server;
    // httplib defaults to SO_REUSEPORT, which would let a second server share a busy port.
    svr.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });

    // Re-read per request: files are immutable while served, and this keeps no shared state.
    svr.Get("/bundle.json", [bundle](const httplib::Request&, httplib::Response& res) {
        if (auto body = slurp(bundle)) {
            res.set_content(*body, "application/json");
        } else {
            res.status = 500;
            res.set_content("bundle unreadable", "text/plain");
        }
    });
    const auto index_path = assets_dir ? std::optional(*assets_dir / "index.html") : std::nullopt;
    svr.Get("/", [index_path](const httplib::Request&, httplib::Response& res) {
        if (index_path) {
            if (auto body = slurp(*index_path)) {
                res.set_content(*body, "text/html");
                return;
            }
        }
        res.set_content(default_index_html(), "text/html");
    });
    if (assets_dir) {
        svr.set_mount_point("/", assets_dir->string());
    }
}

BundleServer::~BundleServer() = default;

bool BundleServer::bind(const std::string& host, int port) {
    auto& svr = impl_->server;
    if (port == 0) {
        port_ = svr.bind_to_any_port(host);
        return port_ > 0;
    }
    if (!svr.bind_to_port(host, port)) return false;
    port_ = port;
    return true;
}

void BundleServer::run() { impl_->server.listen_after_bind(); }

void BundleServer::stop() { impl_->server.stop(); }

void BundleServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace liftmesh
