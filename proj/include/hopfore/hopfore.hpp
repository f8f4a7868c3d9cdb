#pragma once

#include "hopfore/action.hpp"
#include "hopfore/charp.hpp"
#include "hopfore/hopf.hpp"
#include "hopfore/json_io.hpp"
#include "hopfore/matrix.hpp"
#include "hopfore/ore.hpp"
#include "hopfore/pipeline.hpp"
#include "hopfore/reduce.hpp"
#include "hopfore/scalar.hpp"
