#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace liftmesh {

/// Local HTTP server for the explorer: /bundle.json, the UI assets, and an index page.
class BundleServer {
public:
    BundleServer(std::filesystem::path bundle, std::optional<std::filesystem::path> assets_dir);
    ~BundleServer();
    BundleServer(const BundleServer&) = delete;
    BundleServer& operator=(const BundleServer&) = delete;

    /// Binds host:port; port 0 picks a free port. Returns false when the port is taken.
    bool bind(const std::string& host, int port);
    int port() const noexcept { return port_; }

    /// Blocks serving requests until stop() is called.
    void run();
    void stop();
    /// Blocks until run() is accepting connections.
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int port_ = -1;
};

/// Index page served at / when no UI asset directory provides one.
std::string default_index_html();

}  // namespace liftmesh
