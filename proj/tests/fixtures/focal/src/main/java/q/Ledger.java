package q;

public class Ledger {
  private long total;

  public Ledger() {
    total = 0;
  }

  public void deposit(long amount) {
    total += amount;
  }

  public boolean withdraw(long amount) {
    if (amount > total) {
      return false;
    }
    total -= amount;
    return true;
  }

  public long balance() {
    return total;
  }

  void audit() {
    total = Math.max(total, 0);
  }
}
