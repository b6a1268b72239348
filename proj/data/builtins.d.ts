// Members of the builtin types that constraint validation knows about.
// Lowercase primitives and the __ecma.* sentinels extend their wrapper types.

interface Object {
  toString(): string;
  valueOf(): Object;
  hasOwnProperty(key): boolean;
  constructor: Function;
}

interface Function {
  apply(thisArg, args?): any;
  call(thisArg, ...args): any;
  bind(thisArg, ...args): Function;
  length: number;
  name: string;
}

interface String {
  length: number;
  charAt(pos): string;
  charCodeAt(index): number;
  concat(...strings): string;
  endsWith(search, end?): boolean;
  includes(search, position?): boolean;
  indexOf(search, position?): number;
  lastIndexOf(search, position?): number;
  match(regexp): any;
  padEnd(length, fill?): string;
  padStart(length, fill?): string;
  repeat(count): string;
  replace(search, replacement): string;
  replaceAll(search, replacement): string;
  search(regexp): number;
  slice(start?, end?): string;
  split(separator?, limit?): string[];
  startsWith(search, position?): boolean;
  substring(start, end?): string;
  toLowerCase(): string;
  toUpperCase(): string;
  trim(): string;
  trimEnd(): string;
  trimStart(): string;
}

interface Number {
  toFixed(digits?): string;
  toPrecision(precision?): string;
  toLocaleString(locales?, options?): string;
}

interface Boolean {
}

interface Array {
  length: number;
  at(index): any;
  concat(...items): any[];
  every(predicate, thisArg?): boolean;
  filter(predicate, thisArg?): any[];
  find(predicate, thisArg?): any;
  findIndex(predicate, thisArg?): number;
  forEach(callback, thisArg?): void;
  includes(item, from?): boolean;
  indexOf(item, from?): number;
  join(separator?): string;
  map(callback, thisArg?): any[];
  pop(): any;
  push(...items): number;
  reduce(callback, initial?): any;
  reverse(): any[];
  shift(): any;
  slice(start?, end?): any[];
  some(predicate, thisArg?): boolean;
  sort(compare?): any[];
  splice(start, deleteCount?, ...items): any[];
  unshift(...items): number;
}

interface Promise {
  then(onFulfilled?, onRejected?): Promise;
  catch(onRejected?): Promise;
  finally(onFinally?): Promise;
}

interface Error {
  message: string;
  name: string;
  stack?: string;
}

interface Date {
  getDate(): number;
  getDay(): number;
  getFullYear(): number;
  getHours(): number;
  getMinutes(): number;
  getMonth(): number;
  getSeconds(): number;
  getTime(): number;
  toISOString(): string;
  toLocaleDateString(locales?, options?): string;
}

interface RegExp {
  exec(text): any;
  test(text): boolean;
  source: string;
  flags: string;
}

interface Map {
  size: number;
  clear(): void;
  delete(key): boolean;
  forEach(callback, thisArg?): void;
  get(key): any;
  has(key): boolean;
  set(key, value): Map;
  keys(): any;
  values(): any;
  entries(): any;
}

interface Set {
  size: number;
  add(value): Set;
  clear(): void;
  delete(value): boolean;
  forEach(callback, thisArg?): void;
  has(value): boolean;
  values(): any;
}

interface string extends String {}
interface number extends Number {}
interface boolean extends Boolean {}
interface __ecma.String extends String {}
interface __ecma.Number extends Number {}
interface __ecma.Integer extends Number {}
interface __ecma.Boolean extends Boolean {}
interface __ecma.Object extends Object {}
interface __ecma.Array extends Array {}
