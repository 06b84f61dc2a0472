// HTTP+JSON API over an in-memory session store.
//
//   POST /api/sessions                              -> 201 {session_id}
//   POST /api/sessions/{id}/rounds/{n}?epsilon=     -> 201 report | 404 | 409 | 422
//   GET  /api/sessions/{id}/rounds/{n}              -> 200 stored report
//   GET  /api/sessions/{id}/rounds/{n}/results?...  -> 200 view | 400 | 404
//   GET  /api/sessions/{id}/compare?a=&b=           -> 200 comparison | 400 | 404
//
// Rounds are immutable once stored. A session may be snapshotted to one JSON
// file holding the raw sheets; reloading replays them through the engine.

#pragma once

#include "tfdelphi/engine.hpp"
#include "tfdelphi/ingestion.hpp"
#include "tfdelphi/report.hpp"
#include "tfdelphi/view.hpp"

#include "httplib.h"
#include "json.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

namespace tfdelphi {

struct ServiceConfig {
    /// Idle sessions older than this are dropped; zero keeps them forever.
    std::chrono::seconds ttl{0};
    std::optional<std::filesystem::path> snapshot_dir;
    LabelTable labels;
    int max_iterations = 10;
};

struct StoredRound {
    RoundSheets sheets;
    double epsilon = 0.75;
    RoundInput input;
    RoundReport report;
    /// Serialized report, so repeated reads are byte-identical.
    std::string body;
};

class Session {
public:
    explicit Session(std::string id) : id_(std::move(id)) { touch(); }

    [[nodiscard]] const std::string& id() const noexcept { return id_; }

    [[nodiscard]] std::shared_ptr<const StoredRound> round(int n) const
    {
        std::shared_lock lock(mu_);
        const auto it = rounds_.find(n);
        return it == rounds_.end() ? nullptr : it->second;
    }

    [[nodiscard]] std::map<int, std::shared_ptr<const StoredRound>> rounds() const
    {
        std::shared_lock lock(mu_);
        return rounds_;
    }

    /// False when round `n` already exists.
    bool insert(int n, std::shared_ptr<const StoredRound> r)
    {
        std::unique_lock lock(mu_);
        return rounds_.emplace(n, std::move(r)).second;
    }

    [[nodiscard]] bool has(int n) const
    {
        std::shared_lock lock(mu_);
        return rounds_.count(n) > 0;
    }

    void touch() noexcept { last_access_.store(std::chrono::steady_clock::now().time_since_epoch().count()); }

    [[nodiscard]] std::chrono::steady_clock::time_point last_access() const noexcept
    {
        return std::chrono::steady_clock::time_point(std::chrono::steady_clock::duration(last_access_.load()));
    }

    /// Serializes uploads within the session.
    std::mutex& upload_mutex() noexcept { return upload_mu_; }

private:
    std::string id_;
    mutable std::shared_mutex mu_;
    std::mutex upload_mu_;
    std::map<int, std::shared_ptr<const StoredRound>> rounds_;
    std::atomic<std::chrono::steady_clock::rep> last_access_{0};
};

class RoundExists : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SessionStore {
public:
    explicit SessionStore(ServiceConfig config = {}) : config_(std::move(config))
    {
        std::random_device rd;
        rng_.seed((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
    }

    [[nodiscard]] const ServiceConfig& config() const noexcept { return config_; }

    std::string create()
    {
        purge_expired();
        std::unique_lock lock(mu_);
        std::string id;
        do {
            id = random_id();
        } while (sessions_.count(id) > 0);
        sessions_.emplace(id, std::make_shared<Session>(id));
        return id;
    }

    [[nodiscard]] std::shared_ptr<Session> find(const std::string& id)
    {
        purge_expired();
        std::shared_lock lock(mu_);
        const auto it = sessions_.find(id);
        if (it == sessions_.end()) {
            return nullptr;
        }
        it->second->touch();
        return it->second;
    }

    [[nodiscard]] std::size_t size() const
    {
        std::shared_lock lock(mu_);
        return sessions_.size();
    }

    /// Validates, evaluates and stores round `n`. Throws ValidationError or RoundExists.
    std::shared_ptr<const StoredRound> add_round(Session& session, int n, RoundSheets sheets, double epsilon)
    {
        std::lock_guard upload(session.upload_mutex());
        if (session.has(n)) {
            throw RoundExists("round " + std::to_string(n) + " already exists in this session");
        }
        auto stored = build_round(n, std::move(sheets), epsilon);
        session.insert(n, stored);
        snapshot(session);
        return stored;
    }

    void purge_expired()
    {
        if (config_.ttl.count() <= 0) {
            return;
        }
        const auto now = std::chrono::steady_clock::now();
        std::unique_lock lock(mu_);
        for (auto it = sessions_.begin(); it != sessions_.end();) {
            if (now - it->second->last_access() > config_.ttl) {
                if (config_.snapshot_dir) {
                    std::error_code ec;
                    std::filesystem::remove(snapshot_path(it->first), ec);
                }
                it = sessions_.erase(it);
            } else {
                ++it;
            }
        }
    }

    /// Reloads every snapshot in the snapshot directory; returns the number of sessions restored.
    std::size_t load_snapshots()
    {
        if (!config_.snapshot_dir || !std::filesystem::is_directory(*config_.snapshot_dir)) {
            return 0;
        }
        std::size_t restored = 0;
        for (const auto& entry : std::filesystem::directory_iterator(*config_.snapshot_dir)) {
            if (entry.path().extension() != ".json") {
                continue;
            }
            std::ifstream in(entry.path());
            const auto j = nlohmann::json::parse(in, nullptr, false);
            if (j.is_discarded() || !j.contains("id") || !j.contains("rounds")) {
                continue;
            }
            auto session = std::make_shared<Session>(j.at("id").get<std::string>());
            for (const auto& r : j.at("rounds")) {
                RoundSheets sheets;
                sheets.responses = r.at("responses").get<std::string>();
                if (r.contains("dimensions") && r.at("dimensions").is_string()) {
                    sheets.dimensions = r.at("dimensions").get<std::string>();
                }
                if (r.contains("descriptions") && r.at("descriptions").is_string()) {
                    sheets.descriptions = r.at("descriptions").get<std::string>();
                }
                const int n = r.at("round").get<int>();
                session->insert(n, build_round(n, std::move(sheets), r.at("epsilon").get<double>()));
            }
            std::unique_lock lock(mu_);
            sessions_[session->id()] = session;
            ++restored;
        }
        return restored;
    }

private:
    std::shared_ptr<const StoredRound> build_round(int n, RoundSheets sheets, double epsilon) const
    {
        auto stored = std::make_shared<StoredRound>();
        stored->input = assemble_round(n, sheets, epsilon);
        stored->report = make_report(stored->input, evaluate_round(stored->input), config_.max_iterations);
        stored->body = to_json(stored->report, config_.labels).dump();
        stored->sheets = std::move(sheets);
        stored->epsilon = epsilon;
        return stored;
    }

    [[nodiscard]] std::filesystem::path snapshot_path(const std::string& id) const
    {
        return *config_.snapshot_dir / (id + ".json");
    }

    void snapshot(const Session& session) const
    {
        if (!config_.snapshot_dir) {
            return;
        }
        nlohmann::json j;
        j["id"] = session.id();
        j["rounds"] = nlohmann::json::array();
        for (const auto& [n, r] : session.rounds()) {
            nlohmann::json jr = {{"round", n}, {"epsilon", r->epsilon}, {"responses", r->sheets.responses}};
            jr["dimensions"] = r->sheets.dimensions ? nlohmann::json(*r->sheets.dimensions) : nlohmann::json();
            jr["descriptions"] = r->sheets.descriptions ? nlohmann::json(*r->sheets.descriptions) : nlohmann::json();
            j["rounds"].push_back(std::move(jr));
        }
        std::filesystem::create_directories(*config_.snapshot_dir);
        const auto path = snapshot_path(session.id());
        const auto tmp = std::filesystem::path(path).concat(".tmp");
        {
            std::ofstream out(tmp, std::ios::trunc);
            out << j.dump();
        }
        std::filesystem::rename(tmp, path);
    }

    std::string random_id()
    {
        std::lock_guard lock(rng_mu_);
        std::ostringstream os;
        os << std::hex;
        for (int k = 0; k < 2; ++k) {
            const std::uint64_t v = rng_();
            char buf[17];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
            os << buf;
        }
        return os.str();
    }

    ServiceConfig config_;
    mutable std::shared_mutex mu_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::mutex rng_mu_;
    std::mt19937_64 rng_;
};

namespace detail {

inline void send_json(httplib::Response& res, int status, const std::string& body)
{
    res.status = status;
    res.set_content(body, "application/json");
}

inline void send_error(httplib::Response& res, int status, const std::string& message,
                       const Diagnostics* diags = nullptr)
{
    nlohmann::json j = {{"error", message}};
    if (diags != nullptr) {
        auto arr = nlohmann::json::array();
        for (const auto& d : *diags) {
            arr.push_back({{"sheet", to_string(d.sheet)},
                           {"line", d.line},
                           {"column", d.column},
                           {"message", d.message}});
        }
        j["diagnostics"] = std::move(arr);
    }
    send_json(res, status, j.dump());
}

inline std::optional<int> path_int(const std::string& s)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

} // namespace detail

/// Registers the API routes on `server`.
inline void mount_api(httplib::Server& server, SessionStore& store)
{
    using httplib::Request;
    using httplib::Response;

    server.Post("/api/sessions", [&store](const Request&, Response& res) {
        detail::send_json(res, 201, nlohmann::json({{"session_id", store.create()}}).dump());
    });

    server.Post(R"(/api/sessions/([^/]+)/rounds/([^/]+))", [&store](const Request& req, Response& res) {
        const auto session = store.find(req.matches[1]);
        if (!session) {
            return detail::send_error(res, 404, "unknown session");
        }
        const auto n = detail::path_int(req.matches[2]);
        if (!n) {
            return detail::send_error(res, 404, "unknown round");
        }
        Diagnostics diags;
        double epsilon = 0.75;
        if (req.has_param("epsilon")) {
            const auto e = detail::parse_real(req.get_param_value("epsilon"));
            if (e.value) {
                epsilon = *e.value;
            } else {
                diags.push_back({SheetKind::Round, 0, 0, "epsilon: " + e.error});
            }
        }
        RoundSheets sheets;
        if (req.has_file("responses")) {
            sheets.responses = req.get_file_value("responses").content;
        } else {
            diags.push_back({SheetKind::Responses, 0, 0, "multipart part 'responses' is required"});
        }
        if (req.has_file("dimensions")) {
            sheets.dimensions = req.get_file_value("dimensions").content;
        }
        if (req.has_file("descriptions")) {
            sheets.descriptions = req.get_file_value("descriptions").content;
        }
        if (!diags.empty()) {
            return detail::send_error(res, 422, "validation failed", &diags);
        }
        try {
            const auto stored = store.add_round(*session, *n, std::move(sheets), epsilon);
            detail::send_json(res, 201, stored->body);
        } catch (const ValidationError& e) {
            detail::send_error(res, 422, "validation failed", &e.diagnostics());
        } catch (const RoundExists& e) {
            detail::send_error(res, 409, e.what());
        } catch (const std::exception& e) {
            detail::send_error(res, 422, e.what());
        }
    });

    const auto lookup = [&store](const Request& req, Response& res) -> std::shared_ptr<const StoredRound> {
        const auto session = store.find(req.matches[1]);
        if (!session) {
            detail::send_error(res, 404, "unknown session");
            return nullptr;
        }
        const auto n = detail::path_int(req.matches[2]);
        auto round = n ? session->round(*n) : nullptr;
        if (!round) {
            detail::send_error(res, 404, "unknown round");
        }
        return round;
    };

    server.Get(R"(/api/sessions/([^/]+)/rounds/([^/]+)/results)", [lookup, &store](const Request& req, Response& res) {
        const auto round = lookup(req, res);
        if (!round) {
            return;
        }
        std::map<std::string, std::string> params;
        for (const auto& [k, v] : req.params) {
            params.emplace(k, v);
        }
        try {
            const auto q = parse_view_query(params, round->report.result.reporting_granularity);
            detail::send_json(res, 200, render_view(round->report, q, store.config().labels).dump());
        } catch (const QueryError& e) {
            detail::send_error(res, 400, e.what());
        }
    });

    server.Get(R"(/api/sessions/([^/]+)/compare)", [&store](const Request& req, Response& res) {
        const auto session = store.find(req.matches[1]);
        if (!session) {
            return detail::send_error(res, 404, "unknown session");
        }
        if (!req.has_param("a") || !req.has_param("b")) {
            return detail::send_error(res, 400, "query parameters a and b are required");
        }
        const auto a = detail::path_int(req.get_param_value("a"));
        const auto b = detail::path_int(req.get_param_value("b"));
        if (!a || !b) {
            return detail::send_error(res, 400, "a and b must be round numbers");
        }
        const auto ra = session->round(*a);
        const auto rb = session->round(*b);
        if (!ra || !rb) {
            return detail::send_error(res, 404, "unknown round " + std::to_string(ra ? *b : *a));
        }
        try {
            const auto cmp = compare_rounds(ra->report.result, rb->report.result);
            detail::send_json(res, 200, to_json(cmp, store.config().labels).dump());
        } catch (const ContractError& e) {
            detail::send_error(res, 400, e.what());
        }
    });
}

} // namespace tfdelphi
