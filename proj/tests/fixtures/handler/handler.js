import { DocumentClient } from "aws-sdk/clients/dynamodb";
const documentClient = new DocumentClient();

export default async (req, res) => {
  const params = {
    TableName: "Users",
    KeyConditionExpression: "email = :email",
    ExpressionAttributeValues: { ":email": req.body.email },
  };
  documentClient.query(params, (err, data) => {
    if (err) {
      res.status(500).json({ error: err.message });
    } else {
      res.status(200).json(data.Items);
    }
  });
};
