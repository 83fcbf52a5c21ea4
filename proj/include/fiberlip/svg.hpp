#pragma once

#include <string>
#include <vector>

#include "fiberlip/fibration.hpp"
#include "fiberlip/hoelder.hpp"
#include "fiberlip/spaces.hpp"

namespace fiberlip::svg {

/// Three-segment scene with the fibers over x1 = 6 and x1 = 7 highlighted and
/// the named points of the counterexample marked. Plain generated markup.
std::string three_segment_scene(const spaces::ThreeSegmentScenario& sc);

/// Scatter of a planar fibration: X points in gray, the section graph in
/// blue, members of the plain cone at `vertex` in red, the vertex ringed.
std::string cone_scene(const Fibration& f, const Section& phi, const hoelder::ConeSpec& cone);

void write_text_file(const std::string& path, const std::string& content);

} // namespace fiberlip::svg
