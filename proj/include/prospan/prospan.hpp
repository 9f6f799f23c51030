#pragma once

#include "prospan/error.hpp"
#include "prospan/group.hpp"
#include "prospan/tower.hpp"
#include "prospan/groups.hpp"
#include "prospan/gset.hpp"
#include "prospan/fincat.hpp"
#include "prospan/chain.hpp"
#include "prospan/span.hpp"
#include "prospan/categories.hpp"
#include "prospan/mackey.hpp"
#include "prospan/io.hpp"
#include "prospan/verify.hpp"
