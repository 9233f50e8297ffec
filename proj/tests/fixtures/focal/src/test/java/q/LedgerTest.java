package q;

import static org.junit.Assert.*;

import org.junit.Test;

public class LedgerTest {
  @Test
  public void testDeposit() {
    Ledger l = new Ledger();
    l.deposit(5);
    assertEquals(5L, l.balance());
  }

  @Test
  public void testOverdraft() {
    Ledger l = new Ledger();
    l.deposit(5);
    boolean ok = l.withdraw(10);
    assertFalse(ok);
  }

  @Test
  public void testHistory() {
    Ledger l = new Ledger();
    assertEquals(0L, l.balance());
  }
}
