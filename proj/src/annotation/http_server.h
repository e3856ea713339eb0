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

// HTTP front end for the annotation service. Bodies are UTF-8 JSON except
// the gold export, which is newline-delimited JSON. Every request carries
// "Authorization: Bearer <token>".
//
//   POST /datasets                 admin; {"content", "name"?, "required_votes"?}
//   GET  /datasets/{id}/stats
//   GET  /tasks/next?annotator=ID[&dataset=ID]
//   POST /votes                    {"dataset_id", "item_id", "annotator_id",
//                                   "label" | "skipped": true, "client_token"?}
//   POST /adjudications            admin; {"dataset_id", "item_id", "label",
//                                   "adjudicator_id"}
//   GET  /datasets/{id}/agreement
//   GET  /datasets/{id}/export     admin
//
// Errors: 401 unknown token, 403 wrong identity or role, 404 unknown
// dataset/item, 409 conflicts, 422 malformed bodies or records.

#ifndef AMHS_ANNOTATION_HTTP_SERVER_H_
#define AMHS_ANNOTATION_HTTP_SERVER_H_

#include <memory>
#include <string>
#include <thread>

#include "annotation/service.h"
#include "common/error.h"

namespace httplib {
class Server;
}

namespace amhs::annotation {

int HttpStatusFor(ErrorCode code);

class HttpServer {
 public:
  explicit HttpServer(AnnotationService &service);
  ~HttpServer();

  // Port 0 picks a free port. Returns the bound port.
  int Bind(const std::string &host, int port);
  // Blocks until Stop().
  void Listen();
  // Listen() on a background thread.
  void Start();
  void Stop();

 private:
  void Route();

  AnnotationService &service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace amhs::annotation

#endif  // AMHS_ANNOTATION_HTTP_SERVER_H_
