#pragma once

#include "wgl/estimates.hpp"
#include "wgl/field.hpp"
#include "wgl/geometry.hpp"
#include "wgl/io.hpp"
#include "wgl/jet.hpp"
#include "wgl/surfaces.hpp"
#include "wgl/util.hpp"
#include "wgl/willmore.hpp"
