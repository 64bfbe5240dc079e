#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "docmap/bundle.hpp"
#include "docmap/service.hpp"

namespace docmap {

// {"grid": {"rows", "cols"}, "query", "documents": [{"id", "title",
// "rank"}], "layers": [{"id", "kind", "label", "hue", "brightness",
// "range": [min, max], "members"?}]}. Member flags appear on cluster layers
// only.
nlohmann::json bundle_to_json(const MapBundle& bundle);

// Newline-delimited JSON request/response dispatch over a
// PresentationService. Requests look like {"op": ..., "session": ..., ...};
// responses are {"ok": true, "body": ...} or {"ok": false, "error":
// {"code", "msg"}}. Ops: open_session, list_engines, search, get_document,
// toggle_press, export, close.
class ProtocolHandler {
 public:
  explicit ProtocolHandler(PresentationService& service) : service_(service) {}

  // One request line in, one response line out (no trailing newline).
  std::string handle_line(std::string_view line);
  nlohmann::json handle(const nlohmann::json& request);

 private:
  nlohmann::json dispatch(const nlohmann::json& request);

  PresentationService& service_;
};

nlohmann::json error_response(std::string_view code, std::string_view msg);

// Serves requests from `in` until EOF, writing one response per line.
void serve_stream(ProtocolHandler& handler, std::istream& in, std::ostream& out);

}  // namespace docmap
