// Copyright 2026 The amhs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "annotation/http_server.h"

#include <httplib.h>

#include <set>

#include <json.hpp>

#include "common/error.h"
#include "common/log.h"

namespace amhs::annotation {

using nlohmann::ordered_json;

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConflict:
      return 409;
    case ErrorCode::kUnauthorized:
      return 401;
    case ErrorCode::kForbidden:
      return 403;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse:
    case ErrorCode::kSchema:
      return 422;
    case ErrorCode::kUnavailable:
      return 503;
    default:
      return 500;
  }
}

namespace {

using Handler = std::function<void(const httplib::Request &, httplib::Response &,
                                   const Annotator &)>;

void SendJson(httplib::Response &res, int status, const ordered_json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void SendError(httplib::Response &res, int status, const std::string &code,
               const std::string &message) {
  SendJson(res, status, {{"error", code}, {"message", message}});
}

nlohmann::json ParseBody(const httplib::Request &req,
                         const std::set<std::string> &required,
                         const std::set<std::string> &optional) {
  nlohmann::json j = nlohmann::json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    Fail(ErrorCode::kSchema, "request body must be a JSON object");
  }
  for (const auto &[k, v] : j.items()) {
    if (!required.count(k) && !optional.count(k)) {
      Fail(ErrorCode::kSchema, "unexpected field \"" + k + "\"");
    }
  }
  for (const auto &k : required) {
    if (!j.contains(k)) Fail(ErrorCode::kSchema, "missing field \"" + k + "\"");
  }
  return j;
}

std::string StringField(const nlohmann::json &j, const char *key) {
  if (!j.at(key).is_string()) {
    Fail(ErrorCode::kSchema, std::string("\"") + key + "\" must be a string");
  }
  return j.at(key).get<std::string>();
}

Label LabelField(const nlohmann::json &j, const char *key) {
  auto l = ParseLabel(StringField(j, key));
  if (!l) {
    Fail(ErrorCode::kSchema, "unknown label \"" + j.at(key).get<std::string>() +
                                 "\" (expected racial, religious, gender or "
                                 "nonhate)");
  }
  return *l;
}

ordered_json GoldJson(const std::optional<Label> &gold) {
  return gold ? ordered_json(std::string(LabelName(*gold))) : ordered_json();
}

ordered_json ResultJson(const VoteResult &r) {
  return {{"status", TaskStatusName(r.status)},
          {"gold", GoldJson(r.gold)},
          {"replayed", r.replayed}};
}

ordered_json LabelCounts(const std::array<size_t, kNumLabels> &counts) {
  ordered_json j = ordered_json::object();
  for (int c = 0; c < kNumLabels; ++c) j[std::string(kLabelNames[c])] = counts[c];
  return j;
}

void RequireSelf(const Annotator &caller, const std::string &id) {
  if (caller.id != id) {
    Fail(ErrorCode::kForbidden,
         "token belongs to " + caller.id + ", request names " + id);
  }
}

void RequireAdmin(const Annotator &caller) {
  if (caller.role != Role::kAdmin) {
    Fail(ErrorCode::kForbidden, "this endpoint requires the admin role");
  }
}

}  // namespace

HttpServer::HttpServer(AnnotationService &service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  Route();
}

HttpServer::~HttpServer() { Stop(); }

void HttpServer::Route() {
  auto guarded = [this](Handler h) {
    return [this, h](const httplib::Request &req, httplib::Response &res) {
      try {
        std::string auth = req.get_header_value("Authorization");
        const std::string prefix = "Bearer ";
        if (auth.compare(0, prefix.size(), prefix) != 0) {
          Fail(ErrorCode::kUnauthorized, "missing bearer token");
        }
        const Annotator *caller =
            service_.annotators().FindByToken(auth.substr(prefix.size()));
        if (!caller) Fail(ErrorCode::kUnauthorized, "unknown token");
        if (!caller->active) Fail(ErrorCode::kForbidden, "annotator inactive");
        h(req, res, *caller);
      } catch (const Error &e) {
        SendError(res, HttpStatusFor(e.code()), ErrorCodeName(e.code()), e.what());
      } catch (const nlohmann::json::exception &e) {
        SendError(res, 422, ErrorCodeName(ErrorCode::kSchema), e.what());
      } catch (const std::exception &e) {
        Log().error("request {} {} failed: {}", req.method, req.path, e.what());
        SendError(res, 500, ErrorCodeName(ErrorCode::kInternal), e.what());
      }
    };
  };

  server_->Post("/datasets", guarded([this](const httplib::Request &req,
                                            httplib::Response &res,
                                            const Annotator &caller) {
    RequireAdmin(caller);
    auto j = ParseBody(req, {"content"}, {"name", "required_votes"});
    std::string name = j.contains("name") ? StringField(j, "name") : "";
    int votes = 3;
    if (j.contains("required_votes")) {
      if (!j["required_votes"].is_number_integer()) {
        Fail(ErrorCode::kSchema, "\"required_votes\" must be an integer");
      }
      votes = j["required_votes"].get<int>();
    }
    auto r = service_.ImportDataset(StringField(j, "content"), name, votes);
    SendJson(res, 201, {{"dataset_id", r.dataset_id}, {"tasks", r.num_tasks}});
  }));

  server_->Get(R"(/datasets/([^/]+)/stats)",
               guarded([this](const httplib::Request &req,
                              httplib::Response &res, const Annotator &) {
                 auto s = service_.Stats(req.matches[1]);
                 ordered_json j;
                 j["dataset_id"] = s.dataset.id;
                 j["name"] = s.dataset.name;
                 j["required_votes"] = s.dataset.required_votes;
                 j["tasks"] = s.dataset.num_items;
                 j["open"] = s.open;
                 j["complete"] = s.complete;
                 j["adjudication"] = s.adjudication;
                 j["votes"] = s.votes;
                 j["skipped"] = s.skipped;
                 j["gold_counts"] = LabelCounts(s.gold_counts);
                 j["vote_counts"] = LabelCounts(s.vote_counts);
                 SendJson(res, 200, j);
               }));

  server_->Get("/tasks/next", guarded([this](const httplib::Request &req,
                                             httplib::Response &res,
                                             const Annotator &caller) {
    if (!req.has_param("annotator")) {
      Fail(ErrorCode::kSchema, "missing query parameter \"annotator\"");
    }
    std::string annotator = req.get_param_value("annotator");
    RequireSelf(caller, annotator);
    auto a = service_.NextTask(annotator, req.get_param_value("dataset"));
    if (!a) {
      SendJson(res, 200, {{"task", nullptr}});
      return;
    }
    ordered_json t;
    t["dataset_id"] = a->task.dataset_id;
    t["item_id"] = a->task.item_id;
    t["raw_text"] = a->task.raw_text;
    t["norm_text"] = a->task.norm_text;
    t["tokens"] = a->task.tokens;
    t["required_votes"] = a->task.required_votes;
    t["lease_expires_at"] = FormatRfc3339(a->lease_expires_at);
    SendJson(res, 200, {{"task", t}});
  }));

  server_->Post("/votes", guarded([this](const httplib::Request &req,
                                         httplib::Response &res,
                                         const Annotator &caller) {
    auto j = ParseBody(req, {"dataset_id", "item_id", "annotator_id"},
                       {"label", "skipped", "client_token"});
    VoteRequest v;
    v.dataset_id = StringField(j, "dataset_id");
    v.item_id = StringField(j, "item_id");
    v.annotator_id = StringField(j, "annotator_id");
    RequireSelf(caller, v.annotator_id);
    if (j.contains("skipped")) {
      if (!j["skipped"].is_boolean()) {
        Fail(ErrorCode::kSchema, "\"skipped\" must be a boolean");
      }
      v.skipped = j["skipped"].get<bool>();
    }
    if (j.contains("label") && !j["label"].is_null()) v.label = LabelField(j, "label");
    if (j.contains("client_token")) v.client_token = StringField(j, "client_token");
    SendJson(res, 200, ResultJson(service_.SubmitVote(v)));
  }));

  server_->Post("/adjudications", guarded([this](const httplib::Request &req,
                                                 httplib::Response &res,
                                                 const Annotator &caller) {
    auto j = ParseBody(req, {"dataset_id", "item_id", "label", "adjudicator_id"},
                       {});
    std::string adjudicator = StringField(j, "adjudicator_id");
    RequireSelf(caller, adjudicator);
    RequireAdmin(caller);
    auto r = service_.Adjudicate(StringField(j, "dataset_id"),
                                 StringField(j, "item_id"),
                                 LabelField(j, "label"), adjudicator);
    SendJson(res, 200, ResultJson(r));
  }));

  server_->Get(R"(/datasets/([^/]+)/agreement)",
               guarded([this](const httplib::Request &req,
                              httplib::Response &res, const Annotator &) {
                 auto r = service_.Agreement(req.matches[1]);
                 ordered_json j;
                 j["dataset_id"] = std::string(req.matches[1]);
                 j["kappa"] = r.kappa;
                 j["ratings_per_item"] = r.ratings_per_item;
                 j["items_included"] = r.items_included;
                 j["excluded_items"] = r.excluded_items;
                 j["unannotated_items"] = r.unannotated_items;
                 j["label_votes"] = LabelCounts(r.label_votes);
                 SendJson(res, 200, j);
               }));

  server_->Get(R"(/datasets/([^/]+)/export)",
               guarded([this](const httplib::Request &req,
                              httplib::Response &res, const Annotator &caller) {
                 RequireAdmin(caller);
                 res.status = 200;
                 res.set_content(service_.ExportGold(req.matches[1]),
                                 "application/x-ndjson; charset=utf-8");
               }));
}

int HttpServer::Bind(const std::string &host, int port) {
  if (port == 0) {
    int bound = server_->bind_to_any_port(host);
    if (bound < 0) Fail(ErrorCode::kIo, "cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) {
    Fail(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::Listen() { server_->listen_after_bind(); }

void HttpServer::Start() {
  thread_ = std::thread([this] { Listen(); });
  server_->wait_until_ready();
}

void HttpServer::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace amhs::annotation
