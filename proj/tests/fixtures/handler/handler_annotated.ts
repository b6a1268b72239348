import { DocumentClient } from "aws-sdk/clients/dynamodb";
import type { NextApiRequest, NextApiResponse } from "next";
const documentClient: DocumentClient = new DocumentClient();

export default async (req: NextApiRequest, res: NextApiResponse) => {
  const params: Object = {
    TableName: "Users",
    KeyConditionExpression: "email = :email",
    ExpressionAttributeValues: { ":email": req.body.email },
  };
  documentClient.query(params, (err: Error, data: Object) => {
    if (err) {
      res.status(500).json({ error: err.message });
    } else {
      res.status(200).json(data.Items);
    }
  });
};
