interface Order {
  id: string;
}

export const onMessage = (event: MessageEvent, order: Order): void => {
  const payload: string = event.data;
  const ok: boolean = payload.length > 0;
  if (ok) {
    order.id = payload;
  }
};
