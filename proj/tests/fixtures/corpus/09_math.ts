function average(values: number[], fallback: any): number {
  const size: number = values.length;
  if (size === 0) {
    return fallback;
  }
  const sum: number = values.reduce((a: number, b: number) => a + b, 0);
  return sum / size;
}
