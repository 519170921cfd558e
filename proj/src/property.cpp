#include "fpg/property.hpp"

#include <stdexcept>

namespace fpg {

namespace {

class TrivialProperty final : public SimpleProperty {
public:
  PropDatum initial() const override { return 0; }
  std::optional<PropDatum> combine(PropDatum, PropDatum) const override { return 0; }
  std::optional<PropDatum> on_identification(const LinkTransition&, PropDatum) const override {
    return 0;
  }
  bool accepts_closed(PropDatum) const override { return true; }
  std::size_t datum_count() const override { return 1; }
  std::string name() const override { return "trivial"; }
};

// Counts internal vertices, saturating at x+1. A configuration over the cap
// can never recover (vertices stay internal), so the hooks reject instead of
// carrying the saturated value along.
class MaxInternalVertices final : public SimpleProperty {
public:
  MaxInternalVertices(int x, bool exact_one) : x_(x), exact_one_(exact_one) {
    if (x < 0) throw std::invalid_argument("max_internal_vertices: x must be >= 0");
  }

  PropDatum initial() const override { return 0; }

  std::optional<PropDatum> combine(PropDatum a, PropDatum b) const override {
    return cap(a + b);
  }

  std::optional<PropDatum> on_identification(const LinkTransition& t,
                                             PropDatum d) const override {
    return cap(d + t.vertex_classes_closed);
  }

  bool accepts_closed(PropDatum d) const override {
    return exact_one_ ? d == 1 : d <= x_;
  }

  std::size_t datum_count() const override { return static_cast<std::size_t>(x_) + 2; }

  std::string name() const override {
    return exact_one_ ? "one-vertex" : "max-internal=" + std::to_string(x_);
  }

private:
  std::optional<PropDatum> cap(PropDatum d) const {
    if (d > x_) return std::nullopt;  // too many; unrecoverable
    return d;
  }

  int x_;
  bool exact_one_;
};

}  // namespace

std::unique_ptr<SimpleProperty> trivial_property() {
  return std::make_unique<TrivialProperty>();
}

std::unique_ptr<SimpleProperty> max_internal_vertices(int x) {
  return std::make_unique<MaxInternalVertices>(x, false);
}

std::unique_ptr<SimpleProperty> exactly_one_vertex() {
  return std::make_unique<MaxInternalVertices>(1, true);
}

std::string PropertySpec::selector() const {
  switch (kind) {
    case Kind::trivial: return "trivial";
    case Kind::one_vertex: return "one-vertex";
    case Kind::max_internal: return "max-internal=" + std::to_string(max_internal);
  }
  return "?";
}

PropertySpec parse_property_spec(const std::string& selector) {
  PropertySpec spec;
  if (selector == "trivial") {
    spec.kind = PropertySpec::Kind::trivial;
  } else if (selector == "one-vertex") {
    spec.kind = PropertySpec::Kind::one_vertex;
  } else if (selector.rfind("max-internal=", 0) == 0) {
    spec.kind = PropertySpec::Kind::max_internal;
    spec.max_internal = std::stoi(selector.substr(13));
    if (spec.max_internal < 0)
      throw std::invalid_argument("max-internal requires K >= 0");
  } else {
    throw std::invalid_argument("unknown property selector '" + selector + "'");
  }
  return spec;
}

std::unique_ptr<SimpleProperty> make_property(const PropertySpec& spec) {
  switch (spec.kind) {
    case PropertySpec::Kind::trivial: return trivial_property();
    case PropertySpec::Kind::one_vertex: return exactly_one_vertex();
    case PropertySpec::Kind::max_internal: return max_internal_vertices(spec.max_internal);
  }
  throw std::logic_error("bad property spec");
}

}  // namespace fpg
