class A
{
  int a, b, c,x;
  public void A_a()
  {
    if(a>4)
    {
      a--;
    }
    do
    {
      }while(a>10);
  }}
