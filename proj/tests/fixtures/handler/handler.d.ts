interface NextApiRequest {
  body: any;
  query: Object;
  method?: string;
  headers: Object;
}

interface NextApiResponse {
  status(code: number): NextApiResponse;
  json(body: any): void;
  send(body?: any): void;
  end(): void;
}

declare class DocumentClient {
  constructor(options?: Object);
  query(params: Object, callback: Function): Object;
  get(params: Object, callback: Function): Object;
  put(params: Object, callback: Function): Object;
}

interface Request {
  body: any;
  headers: Object;
  url: string;
}
