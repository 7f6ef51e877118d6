#pragma once

#include "fincat/error.hpp"
#include "fincat/linalg.hpp"
#include "fincat/category.hpp"
#include "fincat/constructions.hpp"
#include "fincat/functor.hpp"
#include "fincat/union_find.hpp"
#include "fincat/catset.hpp"
#include "fincat/biset.hpp"
#include "fincat/burnside.hpp"
#include "fincat/corresp.hpp"
#include "fincat/simple.hpp"
#include "fincat/homology.hpp"
#include "fincat/catdsl.hpp"
