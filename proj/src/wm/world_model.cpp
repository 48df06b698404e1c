// Copyright 2026 The skillsim Authors
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

#include "skillsim/wm/world_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

namespace skillsim::wm {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

// ---------------------------------------------------------------------------
// PropertyValue

ValueType PropertyValue::type() const {
  switch (v_.index()) {
    case 0: return ValueType::kString;
    case 1: return ValueType::kFloat;
    case 2: return ValueType::kInt;
    case 3: return ValueType::kBool;
    default: return ValueType::kPose;
  }
}

const std::string& PropertyValue::as_string() const {
  if (const auto* s = std::get_if<std::string>(&v_)) return *s;
  throw WorldModelError("property value is not a string");
}

double PropertyValue::as_number() const {
  if (const auto* d = std::get_if<double>(&v_)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v_)) return static_cast<double>(*i);
  throw WorldModelError("property value is not a number");
}

bool PropertyValue::as_bool() const {
  if (const auto* b = std::get_if<bool>(&v_)) return *b;
  throw WorldModelError("property value is not a boolean");
}

const Pose& PropertyValue::as_pose() const {
  if (const auto* p = std::get_if<Pose>(&v_)) return *p;
  throw WorldModelError("property value is not a pose");
}

namespace {

std::string format_double(double d) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), d);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string PropertyValue::lexical() const {
  switch (type()) {
    case ValueType::kString: return std::get<std::string>(v_);
    case ValueType::kFloat: return format_double(std::get<double>(v_));
    case ValueType::kInt: return std::to_string(std::get<std::int64_t>(v_));
    case ValueType::kBool: return std::get<bool>(v_) ? "true" : "false";
    case ValueType::kPose: {
      const Pose& p = std::get<Pose>(v_);
      std::string out;
      const double vals[7] = {p.position.x(), p.position.y(), p.position.z(),
                              p.orientation.x(), p.orientation.y(), p.orientation.z(),
                              p.orientation.w()};
      for (int i = 0; i < 7; ++i) {
        if (i) out += ' ';
        out += format_double(vals[i]);
      }
      return out;
    }
  }
  return {};
}

const char* PropertyValue::type_tag() const {
  switch (type()) {
    case ValueType::kString: return "string";
    case ValueType::kFloat: return "float";
    case ValueType::kInt: return "int";
    case ValueType::kBool: return "bool";
    case ValueType::kPose: return "pose";
  }
  return "string";
}

bool operator==(const PropertyValue& a, const PropertyValue& b) {
  if (a.is_number() && b.is_number()) return a.as_number() == b.as_number();
  if (a.type() != b.type()) return false;
  return a.v_ == b.v_;
}

// ---------------------------------------------------------------------------
// Element

const PropertyValue* Element::property(const std::string& name) const {
  auto it = properties.find(name);
  if (it == properties.end() || it->second.empty()) return nullptr;
  return &it->second.front();
}

const PropertyValue& Element::require(const std::string& name) const {
  if (const auto* v = property(name)) return *v;
  throw WorldModelError("element '" + id + "' has no property '" + name + "'");
}

std::optional<std::string> Element::string_property(const std::string& name) const {
  const auto* v = property(name);
  if (v == nullptr || v->type() != ValueType::kString) return std::nullopt;
  return v->as_string();
}

std::optional<double> Element::number_property(const std::string& name) const {
  const auto* v = property(name);
  if (v == nullptr || !v->is_number()) return std::nullopt;
  return v->as_number();
}

void Element::set_property(const std::string& name, PropertyValue value) {
  properties[name] = {std::move(value)};
}

void Element::add_relation(const std::string& predicate, const std::string& target) {
  relations.push_back({predicate, target});
}

bool Element::has_relation(const std::string& predicate, const std::string& target) const {
  return std::any_of(relations.begin(), relations.end(), [&](const Relation& r) {
    return r.predicate == predicate && r.target == target;
  });
}

std::size_t Element::remove_relation(const std::string& predicate, const std::string& target) {
  const auto before = relations.size();
  std::erase_if(relations, [&](const Relation& r) {
    return r.predicate == predicate && r.target == target;
  });
  return before - relations.size();
}

std::string Element::frame_name() const {
  if (auto f = string_property(keys::kFrameId)) return *f;
  return id;
}

// ---------------------------------------------------------------------------
// Scene

void Scene::add_concept(const std::string& name, const std::set<std::string>& parents) {
  auto& c = concepts_[name];
  c.name = name;
  for (const auto& p : parents) {
    if (p == name || is_a(p, name)) {
      throw WorldModelError("concept cycle through '" + name + "' and '" + p + "'");
    }
    if (!has_concept(p)) concepts_[p].name = p;
    c.parents.insert(p);
  }
}

bool Scene::is_a(const std::string& concept_name, const std::string& ancestor) const {
  return depth_below(concept_name, ancestor).has_value();
}

std::optional<int> Scene::depth_below(const std::string& concept_name,
                                      const std::string& ancestor) const {
  // Breadth-first walk up the parent links.
  std::deque<std::pair<std::string, int>> frontier{{concept_name, 0}};
  std::set<std::string> seen{concept_name};
  while (!frontier.empty()) {
    auto [name, depth] = frontier.front();
    frontier.pop_front();
    if (name == ancestor) return depth;
    auto it = concepts_.find(name);
    if (it == concepts_.end()) continue;
    for (const auto& p : it->second.parents) {
      if (seen.insert(p).second) frontier.emplace_back(p, depth + 1);
    }
  }
  return std::nullopt;
}

const Element& Scene::element(const std::string& id) const {
  if (const auto* e = find(id)) return *e;
  throw WorldModelError("unknown element '" + id + "'");
}

const Element* Scene::find(const std::string& id) const {
  auto it = elements_.find(id);
  return it == elements_.end() ? nullptr : &it->second;
}

const Element* Scene::frame_owner(const std::string& frame) const {
  for (const auto& [id, e] : elements_) {
    if (e.frame_name() == frame) return &e;
  }
  return nullptr;
}

void Scene::insert_unchecked(Element e) {
  const std::string id = e.id;
  elements_[id] = std::move(e);
}

Element& Scene::mutable_element(const std::string& id) {
  auto it = elements_.find(id);
  if (it == elements_.end()) throw WorldModelError("unknown element '" + id + "'");
  return it->second;
}

void Scene::erase_unchecked(const std::string& id) { elements_.erase(id); }

void Scene::validate() const {
  std::map<std::string, std::string> frames;
  for (const auto& [id, e] : elements_) {
    if (!has_concept(e.type)) {
      throw WorldModelError("element '" + id + "' has unknown concept '" + e.type + "'");
    }
    for (const auto& r : e.relations) {
      if (!contains(r.target)) {
        throw WorldModelError("element '" + id + "' relation " + r.predicate +
                              " refers to undeclared element '" + r.target + "'");
      }
    }
    const std::string frame = e.frame_name();
    if (frame == world_frame_) {
      throw WorldModelError("element '" + id + "' redefines the world frame");
    }
    auto [it, inserted] = frames.emplace(frame, id);
    if (!inserted) {
      throw WorldModelError("frame '" + frame + "' published by both '" + it->second + "' and '" +
                            id + "'");
    }
  }
  // Frame cycles: follow LinkedToFrameId links from every element.
  for (const auto& [id, e] : elements_) {
    std::set<std::string> visited{e.frame_name()};
    const Element* cur = &e;
    while (true) {
      auto parent = cur->string_property(keys::kLinkedToFrameId);
      if (!parent || *parent == world_frame_) break;
      auto it = frames.find(*parent);
      if (it == frames.end()) break;  // broken chains are reported on resolution
      if (!visited.insert(*parent).second) {
        throw WorldModelError("frame cycle through '" + *parent + "'");
      }
      cur = &elements_.at(it->second);
    }
  }
}

bool operator==(const Scene& a, const Scene& b) {
  return serialize_scene(a) == serialize_scene(b);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class TokKind { kIdent, kLiteral, kSemicolon, kComma, kDot };

struct Token {
  TokKind kind;
  std::string text;
  std::string tag;  // literal type tag, empty when untagged
};

std::vector<Token> tokenize(const std::string& line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      break;
    } else if (c == ';' || c == ',') {
      out.push_back({c == ';' ? TokKind::kSemicolon : TokKind::kComma, std::string(1, c), {}});
      ++i;
    } else if (c == '"') {
      std::string text;
      ++i;
      bool closed = false;
      while (i < n) {
        if (line[i] == '\\' && i + 1 < n) {
          const char esc = line[i + 1];
          text += esc == 'n' ? '\n' : esc;
          i += 2;
        } else if (line[i] == '"') {
          closed = true;
          ++i;
          break;
        } else {
          text += line[i++];
        }
      }
      if (!closed) throw ParseError(line_no, "unterminated string literal");
      std::string tag;
      if (line.compare(i, 2, "^^") == 0) {
        i += 2;
        while (i < n && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ';' &&
               line[i] != ',') {
          tag += line[i++];
        }
        if (!tag.empty() && tag.back() == '.' ) {
          tag.pop_back();
          out.push_back({TokKind::kLiteral, text, tag});
          out.push_back({TokKind::kDot, ".", {}});
          continue;
        }
        if (tag.empty()) throw ParseError(line_no, "empty type tag");
      } else if (i < n && line[i] == '@') {
        while (i < n && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ';' &&
               line[i] != ',') {
          ++i;  // language tags are accepted and dropped
        }
      }
      out.push_back({TokKind::kLiteral, text, tag});
    } else {
      std::string text;
      while (i < n && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ';' &&
             line[i] != ',' && line[i] != '"') {
        text += line[i++];
      }
      if (text == ".") {
        out.push_back({TokKind::kDot, ".", {}});
      } else if (text.size() > 1 && text.back() == '.' && (i >= n || line.find_first_not_of(
                                                                          " \t\r", i) == std::string::npos)) {
        text.pop_back();
        out.push_back({TokKind::kIdent, text, {}});
        out.push_back({TokKind::kDot, ".", {}});
      } else {
        out.push_back({TokKind::kIdent, text, {}});
      }
    }
  }
  return out;
}

PropertyValue parse_literal(const Token& t, int line_no) {
  std::string tag = t.tag;
  if (tag.rfind("xsd:", 0) == 0) tag = tag.substr(4);
  try {
    if (tag.empty() || tag == "string") return PropertyValue(t.text);
    if (tag == "float" || tag == "double" || tag == "decimal") {
      double d = 0.0;
      auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), d);
      if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size()) throw 0;
      return PropertyValue(d);
    }
    if (tag == "int" || tag == "integer" || tag == "long") {
      std::int64_t v = 0;
      auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size()) throw 0;
      return PropertyValue(v);
    }
    if (tag == "bool" || tag == "boolean") {
      if (t.text == "true") return PropertyValue(true);
      if (t.text == "false") return PropertyValue(false);
      throw 0;
    }
    if (tag == "pose") {
      std::istringstream in(t.text);
      double v[7];
      for (double& x : v) {
        if (!(in >> x)) throw 0;
      }
      std::string rest;
      if (in >> rest) throw 0;
      return PropertyValue(Pose(Vec3(v[0], v[1], v[2]), Quat(v[6], v[3], v[4], v[5])));
    }
  } catch (const std::invalid_argument&) {
    throw ParseError(line_no, "degenerate quaternion in pose literal \"" + t.text + "\"");
  } catch (int) {
    throw ParseError(line_no, "malformed " + tag + " literal \"" + t.text + "\"");
  }
  throw ParseError(line_no, "unknown type tag '" + t.tag + "'");
}

struct Statement {
  std::string subject;
  std::string predicate;
  Token object;
  int line;
};

bool is_type_predicate(const std::string& p) { return p == "a" || p == "rdf:type"; }
bool is_subclass_predicate(const std::string& p) {
  return p == "subClassOf" || p == "rdfs:subClassOf";
}
bool is_label_predicate(const std::string& p) { return p == "rdfs:label" || p == "label"; }

std::vector<Statement> parse_statements(std::string_view text) {
  std::vector<Statement> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::string carried_subject;  // set after a line ending in ';'
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = tokenize(line, line_no);
    if (toks.empty()) continue;
    std::size_t i = 0;
    std::string subject;
    if (!carried_subject.empty()) {
      subject = carried_subject;
    } else {
      if (toks[0].kind != TokKind::kIdent) throw ParseError(line_no, "expected a subject identifier");
      subject = toks[0].text;
      i = 1;
    }
    carried_subject.clear();
    bool terminated = false;
    while (i < toks.size()) {
      if (toks[i].kind != TokKind::kIdent) throw ParseError(line_no, "expected a predicate");
      const std::string predicate = toks[i++].text;
      bool have_object = false;
      while (true) {
        if (i >= toks.size()) {
          if (!have_object) throw ParseError(line_no, "missing object for predicate '" + predicate + "'");
          break;
        }
        const Token& obj = toks[i];
        if (obj.kind != TokKind::kIdent && obj.kind != TokKind::kLiteral) {
          throw ParseError(line_no, "expected an object after '" + predicate + "'");
        }
        out.push_back({subject, predicate, obj, line_no});
        have_object = true;
        ++i;
        if (i < toks.size() && toks[i].kind == TokKind::kComma) {
          ++i;
          continue;
        }
        break;
      }
      if (i >= toks.size()) break;
      if (toks[i].kind == TokKind::kSemicolon) {
        ++i;
        if (i >= toks.size()) carried_subject = subject;
        continue;
      }
      if (toks[i].kind == TokKind::kDot) {
        ++i;
        terminated = true;
        if (i < toks.size()) throw ParseError(line_no, "unexpected tokens after '.'");
        break;
      }
      throw ParseError(line_no, "unexpected token '" + toks[i].text + "'");
    }
    (void)terminated;
  }
  if (!carried_subject.empty()) {
    throw ParseError(line_no, "statement list for '" + carried_subject + "' is not terminated");
  }
  return out;
}

}  // namespace

Scene load_scene(std::string_view text) {
  const auto statements = parse_statements(text);
  Scene scene;

  // Concepts first so that instance declarations can be checked in one pass.
  for (const auto& s : statements) {
    if (s.subject == "@scene") continue;
    if (is_subclass_predicate(s.predicate)) {
      if (s.object.kind != TokKind::kIdent) throw ParseError(s.line, "subClassOf expects a concept");
      try {
        scene.add_concept(s.subject, {s.object.text});
      } catch (const WorldModelError& e) {
        throw ParseError(s.line, e.what());
      }
    } else if (is_type_predicate(s.predicate) && s.object.text == "owl:Class") {
      scene.add_concept(s.subject);
    }
  }

  std::map<std::string, int> decl_line;
  std::map<std::string, Element> elements;
  for (const auto& s : statements) {
    if (s.subject == "@scene") {
      if (s.predicate != keys::kWorldFrameId || s.object.kind != TokKind::kLiteral) {
        throw ParseError(s.line, "unsupported scene directive '" + s.predicate + "'");
      }
      scene.set_world_frame(s.object.text);
      continue;
    }
    if (is_subclass_predicate(s.predicate)) continue;
    if (is_type_predicate(s.predicate)) {
      if (s.object.kind != TokKind::kIdent) throw ParseError(s.line, "'a' expects a concept");
      const std::string& c = s.object.text;
      if (c == "owl:Class" || c == "owl:NamedIndividual") continue;
      if (!scene.has_concept(c)) throw ParseError(s.line, "unknown concept '" + c + "'");
      if (scene.has_concept(s.subject)) {
        throw ParseError(s.line, "'" + s.subject + "' is declared both as concept and instance");
      }
      Element& e = elements[s.subject];
      if (!e.type.empty() && e.type != c) {
        throw ParseError(s.line, "element '" + s.subject + "' has two concepts ('" + e.type +
                                     "', '" + c + "')");
      }
      e.id = s.subject;
      e.type = c;
      decl_line.emplace(s.subject, s.line);
    }
  }

  for (const auto& s : statements) {
    if (s.subject == "@scene" || is_subclass_predicate(s.predicate) ||
        is_type_predicate(s.predicate)) {
      continue;
    }
    auto it = elements.find(s.subject);
    if (it == elements.end()) {
      if (scene.has_concept(s.subject)) continue;  // annotations on concepts are ignored
      throw ParseError(s.line, "statement about undeclared element '" + s.subject + "'");
    }
    Element& e = it->second;
    if (is_label_predicate(s.predicate)) {
      e.label = s.object.text;
    } else if (s.object.kind == TokKind::kLiteral) {
      e.properties[s.predicate].push_back(parse_literal(s.object, s.line));
    } else {
      e.relations.push_back({s.predicate, s.object.text});
    }
  }

  for (auto& [id, e] : elements) {
    for (const auto& r : e.relations) {
      if (!elements.count(r.target)) {
        int line = decl_line[id];
        for (const auto& s : statements) {
          if (s.subject == id && s.predicate == r.predicate && s.object.text == r.target) {
            line = s.line;
            break;
          }
        }
        throw ParseError(line, "dangling reference: '" + id + "' " + r.predicate + " '" +
                                   r.target + "' is not declared");
      }
    }
    scene.insert_unchecked(std::move(e));
  }
  try {
    scene.validate();
  } catch (const WorldModelError& e) {
    throw ParseError(0, e.what());
  }
  return scene;
}

Scene load_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scene file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_scene(buf.str());
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string serialize_scene(const Scene& scene) {
  struct Line {
    std::string subject, predicate, object;
  };
  std::vector<Line> lines;
  lines.push_back({"@scene", keys::kWorldFrameId, quote(scene.world_frame()) + "^^string"});
  for (const auto& [name, c] : scene.concepts()) {
    if (c.parents.empty()) {
      lines.push_back({name, "a", "owl:Class"});
    } else {
      for (const auto& p : c.parents) lines.push_back({name, "rdfs:subClassOf", p});
    }
  }
  for (const auto& [id, e] : scene.elements()) {
    lines.push_back({id, "a", e.type});
    if (!e.label.empty()) lines.push_back({id, "rdfs:label", quote(e.label) + "^^string"});
    for (const auto& [name, values] : e.properties) {
      for (const auto& v : values) {
        lines.push_back({id, name, quote(v.lexical()) + "^^" + v.type_tag()});
      }
    }
    for (const auto& r : e.relations) lines.push_back({id, r.predicate, r.target});
  }
  std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (a.subject != b.subject) return a.subject < b.subject;
    return a.predicate < b.predicate;
  });
  std::string out;
  for (const auto& l : lines) out += l.subject + " " + l.predicate + " " + l.object + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Queries and mutation

std::vector<const Element*> query_by_concept(const Scene& scene, const std::string& concept_name,
                                             bool include_subtypes) {
  if (!scene.has_concept(concept_name)) {
    throw WorldModelError("unknown concept '" + concept_name + "'");
  }
  std::vector<const Element*> out;
  for (const auto& [id, e] : scene.elements()) {
    if (e.type == concept_name || (include_subtypes && scene.is_a(e.type, concept_name))) {
      out.push_back(&e);
    }
  }
  return out;
}

std::vector<const Element*> resolve_relation(const Scene& scene, const std::string& subject,
                                             const std::string& predicate) {
  const Element& e = scene.element(subject);
  std::vector<const Element*> out;
  for (const auto& r : e.relations) {
    if (r.predicate == predicate) out.push_back(&scene.element(r.target));
  }
  return out;
}

Pose resolve_world_pose(const Scene& scene, const std::string& id) {
  const Element* cur = &scene.element(id);
  Pose world = Pose::identity();
  const std::size_t limit = scene.elements().size();
  for (std::size_t steps = 0; steps <= limit; ++steps) {
    const auto* pose = cur->property(keys::kPose);
    auto parent = cur->string_property(keys::kLinkedToFrameId);
    if (pose != nullptr && pose->type() != ValueType::kPose) {
      throw WorldModelError("element '" + cur->id + "' has a non-pose skiros:Pose value");
    }
    if (pose == nullptr && !parent) {
      throw WorldModelError("element '" + cur->id + "' has no pose");
    }
    // An element linked to a frame without an explicit pose sits at that frame's origin.
    if (pose != nullptr) world = pose->as_pose() * world;
    if (!parent) {
      throw WorldModelError("broken frame chain: '" + cur->id + "' is not linked to any frame");
    }
    if (*parent == scene.world_frame()) return world;
    const Element* next = scene.frame_owner(*parent);
    if (next == nullptr) {
      throw WorldModelError("broken frame chain: no element publishes frame '" + *parent + "'");
    }
    cur = next;
  }
  throw WorldModelError("frame chain of '" + id + "' does not terminate");
}

void update_element(Scene& scene, Element element) {
  if (!scene.contains(element.id)) throw WorldModelError("unknown element '" + element.id + "'");
  Scene next = scene;
  next.insert_unchecked(std::move(element));
  next.validate();
  scene = std::move(next);
}

void add_element(Scene& scene, Element element) {
  if (scene.contains(element.id)) {
    throw WorldModelError("element '" + element.id + "' already exists");
  }
  Scene next = scene;
  next.insert_unchecked(std::move(element));
  next.validate();
  scene = std::move(next);
}

void remove_element(Scene& scene, const std::string& id) {
  if (!scene.contains(id)) throw WorldModelError("unknown element '" + id + "'");
  for (const auto& [other, e] : scene.elements()) {
    for (const auto& r : e.relations) {
      if (r.target == id && other != id) {
        throw WorldModelError("cannot remove '" + id + "': still referenced by '" + other + "' " +
                              r.predicate);
      }
    }
  }
  Scene next = scene;
  next.erase_unchecked(id);
  next.validate();
  scene = std::move(next);
}

// ---------------------------------------------------------------------------
// WorldModel

WorldModel::WorldModel(Scene scene) {
  scene.validate();
  current_ = std::make_shared<const Scene>(std::move(scene));
}

std::shared_ptr<const Scene> WorldModel::snapshot() const {
  std::shared_lock lock(read_mutex_);
  return current_;
}

void WorldModel::commit(Scene next) {
  auto fresh = std::make_shared<const Scene>(std::move(next));
  std::unique_lock lock(read_mutex_);
  current_ = std::move(fresh);
}

void WorldModel::update_element(Element element) {
  mutate([&](Scene& s) { wm::update_element(s, std::move(element)); });
}

void WorldModel::add_element(Element element) {
  mutate([&](Scene& s) { wm::add_element(s, std::move(element)); });
}

void WorldModel::remove_element(const std::string& id) {
  mutate([&](Scene& s) { wm::remove_element(s, id); });
}

}  // namespace skillsim::wm
