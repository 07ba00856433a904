#pragma once

#include "detset/bounds.hpp"
#include "detset/elem_set.hpp"
#include "detset/enumerate.hpp"
#include "detset/errors.hpp"
#include "detset/gadgets.hpp"
#include "detset/json_io.hpp"
#include "detset/matrix.hpp"
#include "detset/parallel.hpp"
#include "detset/random.hpp"
#include "detset/ring.hpp"
#include "detset/trace_set.hpp"
#include "detset/verify.hpp"
