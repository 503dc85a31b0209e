#pragma once

#include "framekit/frame.hpp"
#include "framekit/io.hpp"
#include "framekit/numeric.hpp"
#include "framekit/orbit.hpp"
#include "framekit/stability.hpp"
#include "framekit/surgery.hpp"
#include "framekit/types.hpp"
