#pragma once

// Umbrella header: the whole library in one include.

#include "netplan/csv.hpp"
#include "netplan/errors.hpp"
#include "netplan/export.hpp"
#include "netplan/geodesy.hpp"
#include "netplan/graph.hpp"
#include "netplan/ingest.hpp"
#include "netplan/planner.hpp"
