// Thread colors for the trace table. The main thread is yellow and the
// first spawned thread green; further threads get evenly spaced hues that
// avoid the yellow/green band.

const NAMED = ["#f5d547", "#79c96d"];

export function threadColor(colorIndex: number): string {
  const named = NAMED[colorIndex];
  if (named !== undefined) return named;
  const hue = (210 + (colorIndex - NAMED.length) * 75) % 360;
  return `hsl(${hue}, 62%, 68%)`;
}
