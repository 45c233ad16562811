public class Door {
    private enum State { Closed, Open, Locked }

    private int openCount;
    private Lock lock;
    private State currentState = State.Closed;

    public void handleEvent(String event) {
        if (currentState == State.Closed) {
            if ("push".equals(event)) {
                currentState = State.Open;
            } else if ("lockDoor".equals(event)) {
                currentState = State.Locked;
            }
        } else if (currentState == State.Open) {
            if ("pull".equals(event)) {
                currentState = State.Closed;
            }
        } else if (currentState == State.Locked) {
            if ("unlockDoor".equals(event)) {
                currentState = State.Closed;
            }
        }
    }

    public void open() {
        openCount = openCount + 1;
        lock.release();
    }

    public void close() {
        if (lock != null) { lock.engage(0); }
    }

    public TODO alarm() {
    }
}
