#include "docmap/protocol.hpp"

#include <istream>
#include <ostream>

#include "docmap/error.hpp"

namespace docmap {

using nlohmann::json;

namespace {

const std::string& string_field(const json& req, const char* name) {
  auto it = req.find(name);
  if (it == req.end() || !it->is_string()) {
    throw Error(ErrorCode::kBadRequest,
                std::string("missing string field `") + name + "`");
  }
  return it->get_ref<const std::string&>();
}

json ok(json body) { return json{{"ok", true}, {"body", std::move(body)}}; }

}  // namespace

json bundle_to_json(const MapBundle& bundle) {
  json docs = json::array();
  for (const auto& d : bundle.documents) {
    docs.push_back({{"id", d.id}, {"title", d.title}, {"rank", d.rank}});
  }
  json layers = json::array();
  for (const auto& l : bundle.layers) {
    json layer = {{"id", l.spec.layer_id},
                  {"kind", layer_kind_name(l.spec.kind)},
                  {"label", l.spec.label},
                  {"terms", l.spec.terms},
                  {"hue", l.hue},
                  {"brightness", l.brightness},
                  {"range", {l.raw_min, l.raw_max}}};
    if (l.spec.kind == LayerKind::kCluster) layer["members"] = l.members;
    layers.push_back(std::move(layer));
  }
  return {{"grid", {{"rows", bundle.grid.rows}, {"cols", bundle.grid.cols}}},
          {"query", bundle.query_echo},
          {"documents", std::move(docs)},
          {"layers", std::move(layers)}};
}

json error_response(std::string_view code, std::string_view msg) {
  return json{{"ok", false}, {"error", {{"code", code}, {"msg", msg}}}};
}

std::string ProtocolHandler::handle_line(std::string_view line) {
  json request;
  try {
    request = json::parse(line);
  } catch (const json::parse_error& e) {
    return error_response("bad-request",
                          std::string("malformed JSON: ") + e.what())
        .dump(-1, ' ', false, json::error_handler_t::replace);
  }
  return handle(request).dump(-1, ' ', false, json::error_handler_t::replace);
}

json ProtocolHandler::handle(const json& request) {
  try {
    if (!request.is_object()) {
      throw Error(ErrorCode::kBadRequest, "request must be a JSON object");
    }
    return dispatch(request);
  } catch (const Error& e) {
    return error_response(e.code_name(), e.what());
  } catch (const std::exception& e) {
    return error_response("internal", e.what());
  }
}

json ProtocolHandler::dispatch(const json& req) {
  const std::string& op = string_field(req, "op");
  if (op == "open_session") {
    return ok({{"session", service_.open_session()}});
  }
  if (op == "list_engines") {
    json engines = json::array();
    for (const auto& e : service_.list_engines()) {
      engines.push_back({{"id", e.engine_id},
                         {"name", e.display_name},
                         {"kind", engine_kind_name(e.kind)}});
    }
    return ok({{"engines", std::move(engines)}});
  }

  const std::string& session = string_field(req, "session");
  if (op == "search") {
    auto bundle = service_.search(session, string_field(req, "engine"),
                                  string_field(req, "query"));
    return ok(bundle_to_json(*bundle));
  }
  if (op == "get_document") {
    Document d = service_.get_document(session, string_field(req, "doc"));
    return ok({{"id", d.id}, {"title", d.title}, {"body", d.body}});
  }
  if (op == "toggle_press") {
    return ok(
        {{"pressed", service_.toggle_press(session, string_field(req, "doc"))}});
  }
  if (op == "export") {
    std::string query_id;
    if (req.contains("query_id")) query_id = string_field(req, "query_id");
    ExportedRun run = service_.export_session(session, query_id);
    return ok({{"query_id", run.query_id},
               {"documents", run.doc_ids},
               {"run", run.run_text}});
  }
  if (op == "close") {
    service_.close_session(session);
    return ok({{"closed", true}});
  }
  throw Error(ErrorCode::kBadRequest, "unknown op '" + op + "'");
}

void serve_stream(ProtocolHandler& handler, std::istream& in,
                  std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out << handler.handle_line(line) << '\n' << std::flush;
  }
}

}  // namespace docmap
