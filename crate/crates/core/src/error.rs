use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Instance invariants that a document or a constructed instance can violate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("dimensions must be even, got {width}x{height}")]
    OddDimensions { width: usize, height: usize },
    #[error("map must be at least 2x2, got {width}x{height}")]
    TooSmall { width: usize, height: usize },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has length {found}, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("row {row} contains invalid character {ch:?}")]
    BadCellChar { row: usize, ch: char },
    #[error("block ({x},{y}) partially blocked")]
    PartialBlock { x: usize, y: usize },
    #[error("cell_costs has {found} entries, expected {expected} (one per free cell)")]
    CostCount { expected: usize, found: usize },
    #[error("cell ({x},{y}) has non-positive or non-finite cost {cost}")]
    BadCost { x: usize, y: usize, cost: f64 },
    #[error("map has no free cells")]
    NoFreeCells,
    #[error("free cells are not connected")]
    DisconnectedMap,
    #[error("zone {0} is empty")]
    EmptyZone(u32),
    #[error("zone {id} has non-positive weight {weight}")]
    BadWeight { id: u32, weight: f64 },
    #[error("zone {id} cell ({x},{y}) is not a free cell")]
    ZoneCellNotFree { id: u32, x: usize, y: usize },
    #[error("zone {0} disconnected")]
    DisconnectedZone(u32),
    #[error("duplicate zone id {0}")]
    DuplicateZoneId(u32),
    #[error("zones {0} and {1} overlap")]
    OverlappingZones(u32, u32),
    #[error("instance has no robots")]
    NoRobots,
    #[error("robot {robot} start ({x},{y}) is not a free cell")]
    RobotNotFree { robot: usize, x: usize, y: usize },
    #[error("duplicate robot start ({x},{y})")]
    DuplicateRobotStart { x: usize, y: usize },
    #[error("ls_period_fraction must lie in (0, 1], got {0}")]
    BadPeriodFraction(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("validation error: {0}")]
    Validation(#[from] ValidationError),
    #[error("disconnected subset")]
    DisconnectedSubset,
    #[error("zone {0} fragmented after contraction")]
    ZoneFragmented(u32),
    #[error("start cell ({x},{y}) outside tree")]
    StartOutsideTree { x: usize, y: usize },
    #[error("zone unreachable within tree")]
    ZoneUnreachable,
    #[error("placement failed: {0}")]
    PlacementFailed(String),
    #[error("instance too large for oracle ({zones} zones, {robots} robots)")]
    OracleTooLarge { zones: usize, robots: usize },
    #[error("{0}")]
    InvalidPlan(String),
    #[error("zone {0} never covered")]
    ZoneNeverCovered(u32),
    #[error("internal invariant breach: {0}")]
    Internal(String),
}
