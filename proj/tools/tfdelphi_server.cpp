// tfdelphi-server: HTTP API for the moderator dashboard.

#include "tfdelphi/service.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string env_or(const char* name, std::string fallback)
{
    const char* v = std::getenv(name);
    return v != nullptr && *v != '\0' ? std::string(v) : fallback;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"2-tuple fuzzy linguistic Delphi service"};
    std::string host = env_or("DELPHI_HOST", "0.0.0.0");
    int port = std::stoi(env_or("DELPHI_PORT", "8080"));
    long ttl = std::stol(env_or("DELPHI_SESSION_TTL", "0"));
    std::string snapshot_dir = env_or("DELPHI_SNAPSHOT_DIR", "");
    std::string static_dir = env_or("DELPHI_STATIC_DIR", "");
    std::string labels_path;
    app.add_option("--host", host, "Bind address");
    app.add_option("--port", port, "Listen port");
    app.add_option("--session-ttl", ttl, "Idle session lifetime in seconds, 0 = forever");
    app.add_option("--snapshot-dir", snapshot_dir, "Directory for per-session JSON snapshots");
    app.add_option("--static", static_dir, "Dashboard bundle served at /");
    app.add_option("--labels", labels_path, "JSON array of reporting label names");
    CLI11_PARSE(app, argc, argv);

    tfdelphi::ServiceConfig config;
    config.ttl = std::chrono::seconds(ttl);
    if (!snapshot_dir.empty()) {
        config.snapshot_dir = snapshot_dir;
    }
    if (const char* m = std::getenv("DELPHI_MAX_ITER"); m != nullptr && *m != '\0') {
        config.max_iterations = std::atoi(m);
    }
    if (!labels_path.empty()) {
        std::ifstream in(labels_path);
        if (!in) {
            std::cerr << "cannot read " << labels_path << "\n";
            return 3;
        }
        config.labels = tfdelphi::LabelTable::from_json(nlohmann::json::parse(in));
    }

    tfdelphi::SessionStore store(config);
    if (const auto n = store.load_snapshots(); n > 0) {
        std::cerr << "restored " << n << " session(s)\n";
    }

    httplib::Server server;
    tfdelphi::mount_api(server, store);
    if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
        std::cerr << "static directory " << static_dir << " does not exist\n";
        return 3;
    }
    std::cerr << "listening on " << host << ":" << port << "\n";
    if (!server.listen(host, port)) {
        std::cerr << "cannot bind " << host << ":" << port << "\n";
        return 3;
    }
    return 0;
}
