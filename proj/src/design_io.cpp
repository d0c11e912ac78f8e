#include "motionforge/design_io.hpp"

#include "motionforge/errors.hpp"

namespace motionforge {

using nlohmann::json;

namespace {

const char* type_label(const json& v) { return v.type_name(); }

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path + ": expected object, got " + type_label(obj));
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key + ": missing required field");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return (it == obj.end() || it->is_null()) ? nullptr : &*it;
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path + ": expected integer, got " + type_label(v));
  return v.get<int>();
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path + ": expected number, got " + type_label(v));
  return v.get<double>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path + ": expected array, got " + type_label(v));
  return v;
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path + ": expected string, got " + type_label(v));
  return v.get<std::string>();
}

TimedPixel parse_timed_pixel(const json& v, const std::string& path) {
  TimedPixel tp;
  tp.frame = as_int(require(v, "frame", path), path + ".frame");
  tp.pixel = {as_number(require(v, "x", path), path + ".x"), as_number(require(v, "y", path), path + ".y")};
  return tp;
}

PatternSpec parse_pattern(const json& v, const std::string& path) {
  as_array(v, path);
  if (v.size() < 2 || v.size() > 3) throw SchemaError(path + ": expected [name, magnitude, radius?]");
  PatternSpec spec;
  const std::string name = as_string(v[0], path + "[0]");
  auto kind = pattern_from_name(name);
  if (!kind) throw SchemaError(path + "[0]: unknown pattern \"" + name + "\"");
  spec.pattern = *kind;
  spec.magnitude = as_number(v[1], path + "[1]");
  if (v.size() == 3) spec.radius = as_number(v[2], path + "[2]");
  return spec;
}

CameraKeyframe parse_keyframe(const json& v, const std::string& path) {
  CameraKeyframe key;
  key.frame = as_int(require(v, "frame", path), path + ".frame");
  const auto& rot = as_array(require(v, "rotation", path), path + ".rotation");
  if (rot.size() != 9) throw SchemaError(path + ".rotation: expected 9 numbers");
  for (int i = 0; i < 9; ++i)
    key.pose.rotation(i / 3, i % 3) = as_number(rot[i], path + ".rotation[" + std::to_string(i) + "]");
  const auto& tr = as_array(require(v, "translation", path), path + ".translation");
  if (tr.size() != 3) throw SchemaError(path + ".translation: expected 3 numbers");
  for (int i = 0; i < 3; ++i)
    key.pose.translation[i] = as_number(tr[i], path + ".translation[" + std::to_string(i) + "]");
  if (const json* fs = optional_field(v, "focal_scale")) key.focal_scale = as_number(*fs, path + ".focal_scale");
  return key;
}

DepthMode parse_depth_mode(const json& v, const std::string& path) {
  const std::string s = as_string(v, path);
  if (s == "mask_mean") return DepthMode::MaskMean;
  if (s == "reference_point") return DepthMode::ReferencePoint;
  if (s == "perspective") return DepthMode::PerspectiveConsistency;
  throw SchemaError(path + ": unknown depth mode \"" + s + "\"");
}

const char* depth_mode_name(DepthMode mode) {
  switch (mode) {
    case DepthMode::MaskMean: return "mask_mean";
    case DepthMode::ReferencePoint: return "reference_point";
    case DepthMode::PerspectiveConsistency: return "perspective";
  }
  return "mask_mean";
}

ObjectSpec parse_object(const json& v, const std::string& path) {
  ObjectSpec obj;
  obj.object_id = as_int(require(v, "id", path), path + ".id");
  if (const json* dm = optional_field(v, "depth_mode")) obj.depth_mode = parse_depth_mode(*dm, path + ".depth_mode");
  if (const json* rps = optional_field(v, "reference_points")) {
    as_array(*rps, path + ".reference_points");
    for (std::size_t i = 0; i < rps->size(); ++i)
      obj.reference_points.push_back(
          parse_timed_pixel((*rps)[i], path + ".reference_points[" + std::to_string(i) + "]"));
  }
  const auto& boxes = as_array(require(v, "key_boxes", path), path + ".key_boxes");
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const std::string bpath = path + ".key_boxes[" + std::to_string(i) + "]";
    const auto& b = boxes[i];
    KeyBox kb;
    kb.frame = as_int(require(b, "frame", bpath), bpath + ".frame");
    kb.box.cx = as_number(require(b, "cx", bpath), bpath + ".cx");
    kb.box.cy = as_number(require(b, "cy", bpath), bpath + ".cy");
    kb.box.w = as_number(require(b, "w", bpath), bpath + ".w");
    kb.box.h = as_number(require(b, "h", bpath), bpath + ".h");
    obj.key_boxes.push_back(kb);
  }
  return obj;
}

LocalTrackSpec parse_local(const json& v, const std::string& path) {
  LocalTrackSpec tr;
  if (!v.is_object()) throw SchemaError(path + ": expected object, got " + type_label(v));
  if (const json* p = optional_field(v, "parent")) tr.parent_object = as_int(*p, path + ".parent");
  const auto& samples = as_array(require(v, "samples", path), path + ".samples");
  for (std::size_t i = 0; i < samples.size(); ++i)
    tr.samples.push_back(parse_timed_pixel(samples[i], path + ".samples[" + std::to_string(i) + "]"));
  return tr;
}

json timed_pixel_json(const TimedPixel& tp) { return {{"frame", tp.frame}, {"x", tp.pixel.x()}, {"y", tp.pixel.y()}}; }

}  // namespace

MotionDesign design_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("$: expected object, got " + std::string(type_label(doc)));
  MotionDesign d;
  d.frame_count = as_int(require(doc, "frame_count", "$"), "$.frame_count");
  d.fps = as_int(require(doc, "fps", "$"), "$.fps");
  if (const json* canvas = optional_field(doc, "canvas")) {
    d.canvas_width = as_int(require(*canvas, "width", "$.canvas"), "$.canvas.width");
    d.canvas_height = as_int(require(*canvas, "height", "$.canvas"), "$.canvas.height");
  }
  if (const json* k = optional_field(doc, "intrinsics")) {
    Intrinsics in;
    in.fx = as_number(require(*k, "fx", "$.intrinsics"), "$.intrinsics.fx");
    in.fy = as_number(require(*k, "fy", "$.intrinsics"), "$.intrinsics.fy");
    in.cx = as_number(require(*k, "cx", "$.intrinsics"), "$.intrinsics.cx");
    in.cy = as_number(require(*k, "cy", "$.intrinsics"), "$.intrinsics.cy");
    in.width = d.canvas_width;
    in.height = d.canvas_height;
    d.intrinsics = in;
  }

  const json& cam = require(doc, "camera", "$");
  const json* patterns = cam.is_object() ? optional_field(cam, "patterns") : nullptr;
  const json* keyframes = cam.is_object() ? optional_field(cam, "keyframes") : nullptr;
  if (!cam.is_object()) throw SchemaError("$.camera: expected object, got " + std::string(type_label(cam)));
  if ((patterns == nullptr) == (keyframes == nullptr))
    throw SchemaError("$.camera: exactly one of \"patterns\" or \"keyframes\" is required");
  if (patterns) {
    std::vector<PatternSpec> specs;
    as_array(*patterns, "$.camera.patterns");
    for (std::size_t i = 0; i < patterns->size(); ++i)
      specs.push_back(parse_pattern((*patterns)[i], "$.camera.patterns[" + std::to_string(i) + "]"));
    d.camera = std::move(specs);
  } else {
    std::vector<CameraKeyframe> keys;
    as_array(*keyframes, "$.camera.keyframes");
    for (std::size_t i = 0; i < keyframes->size(); ++i)
      keys.push_back(parse_keyframe((*keyframes)[i], "$.camera.keyframes[" + std::to_string(i) + "]"));
    d.camera = std::move(keys);
  }

  if (const json* objs = optional_field(doc, "objects")) {
    as_array(*objs, "$.objects");
    for (std::size_t i = 0; i < objs->size(); ++i)
      d.objects.push_back(parse_object((*objs)[i], "$.objects[" + std::to_string(i) + "]"));
  }
  if (const json* locals = optional_field(doc, "local_tracks")) {
    as_array(*locals, "$.local_tracks");
    for (std::size_t i = 0; i < locals->size(); ++i)
      d.local_tracks.push_back(parse_local((*locals)[i], "$.local_tracks[" + std::to_string(i) + "]"));
  }
  if (const json* prompt = optional_field(doc, "text_prompt")) d.text_prompt = as_string(*prompt, "$.text_prompt");

  d.validate();
  return d;
}

MotionDesign parse_design(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("$: malformed JSON (") + e.what() + ")");
  }
  return design_from_json(doc);
}

json intrinsics_to_json(const Intrinsics& k) { return {{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy}}; }

json design_to_json(const MotionDesign& d) {
  json doc;
  doc["frame_count"] = d.frame_count;
  doc["fps"] = d.fps;
  doc["canvas"] = {{"width", d.canvas_width}, {"height", d.canvas_height}};
  if (d.intrinsics) doc["intrinsics"] = intrinsics_to_json(*d.intrinsics);

  if (const auto* patterns = std::get_if<std::vector<PatternSpec>>(&d.camera)) {
    json arr = json::array();
    for (const auto& p : *patterns) {
      json entry = json::array({pattern_name(p.pattern), p.magnitude});
      if (p.radius) entry.push_back(*p.radius);
      arr.push_back(entry);
    }
    doc["camera"] = {{"patterns", arr}};
  } else {
    json arr = json::array();
    for (const auto& k : std::get<std::vector<CameraKeyframe>>(d.camera)) {
      json rot = json::array();
      for (int i = 0; i < 9; ++i) rot.push_back(k.pose.rotation(i / 3, i % 3));
      arr.push_back({{"frame", k.frame},
                     {"rotation", rot},
                     {"translation", {k.pose.translation.x(), k.pose.translation.y(), k.pose.translation.z()}},
                     {"focal_scale", k.focal_scale}});
    }
    doc["camera"] = {{"keyframes", arr}};
  }

  json objs = json::array();
  for (const auto& o : d.objects) {
    json boxes = json::array();
    for (const auto& kb : o.key_boxes)
      boxes.push_back({{"frame", kb.frame}, {"cx", kb.box.cx}, {"cy", kb.box.cy}, {"w", kb.box.w}, {"h", kb.box.h}});
    json obj = {{"id", o.object_id}, {"depth_mode", depth_mode_name(o.depth_mode)}, {"key_boxes", boxes}};
    if (!o.reference_points.empty()) {
      json rps = json::array();
      for (const auto& rp : o.reference_points) rps.push_back(timed_pixel_json(rp));
      obj["reference_points"] = rps;
    }
    objs.push_back(obj);
  }
  doc["objects"] = objs;

  json locals = json::array();
  for (const auto& t : d.local_tracks) {
    json samples = json::array();
    for (const auto& s : t.samples) samples.push_back(timed_pixel_json(s));
    json entry = {{"samples", samples}};
    if (t.parent_object) entry["parent"] = *t.parent_object;
    locals.push_back(entry);
  }
  doc["local_tracks"] = locals;
  doc["text_prompt"] = d.text_prompt;
  return doc;
}

std::string serialize_design(const MotionDesign& d) { return design_to_json(d).dump(2); }

}  // namespace motionforge
