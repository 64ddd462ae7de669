export {
  RunfileError,
  RunRecord,
  NormPoint,
  TrajectoryPoint,
  RunEvent,
  BandPoint,
  parse,
  dumps,
  load,
  runMeta,
  runDim,
  parsePoint,
} from "./runfile.js";
export { Surface, lookupSurface, surfaceNames } from "./surfaces.js";
export { Grid, Segment, sampleGrid, contourSegments } from "./contour.js";
export { PlotInputError, plotTrajectory, plotNormCurves, plotBandEvolution } from "./plots.js";
export { render, runCli } from "./cli.js";
